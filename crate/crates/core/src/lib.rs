//! Exact computer algebra for cyclic covers of projective space over finite
//! fields and their liftings over Witt vectors of length two.

pub mod arith;
pub mod config;
pub mod cover;
pub mod field;
pub mod lifting;
pub mod parse;
pub mod poly;
pub mod projective;
pub mod report;
pub mod ring;
pub mod witt;
