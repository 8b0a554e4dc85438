//! Polynomial algebra: sparse homogeneous forms over `F_q` and `W_2(F_q)`,
//! univariate factorization, `mu`-th roots of forms, and divisors.

mod binary;
mod divisor;
mod form;
mod root;
mod univariate;

use thiserror::Error;

pub use binary::{binary_factor, dehomogenize_binary, homogenize_binary, BinaryFactorization};
pub use divisor::{floor_div, FactoredDivisor, QDivisor, RoundMode};
pub use form::{default_var_names, Exponent, Form};
pub use root::{max_divisibility, mu_th_root_form, witt_mu_th_root, Divisibility, WittRoot};
pub use univariate::{Factorization, UniPoly};

use crate::field::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },
    #[error("expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("forms live over different coefficient rings")]
    RingMismatch,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("leading coefficient is not a unit")]
    NonUnitLeadingCoefficient,
    #[error("form is not divisible by p")]
    NotDivisibleByP,
    #[error("exponent {mu} is divisible by the characteristic {p}")]
    MuDivisibleByP { mu: u64, p: u32 },
    #[error("N = {n} is divisible by the characteristic {p}")]
    NDivisibleByP { n: u64, p: u32 },
    #[error("not a binary form")]
    NotBinary,
    #[error("divisor components {0} and {1} are associate")]
    AssociateComponents(usize, usize),
    #[error("divisor multiplicities must be positive")]
    ZeroMultiplicity,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// All exponent vectors of `num_vars` entries summing to `degree`, in
/// increasing lex order.
pub fn monomials(num_vars: usize, degree: u32) -> Vec<Exponent> {
    fn rec(prefix: &mut Vec<u32>, left: usize, rest: u32, out: &mut Vec<Exponent>) {
        if left == 1 {
            prefix.push(rest);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=rest {
            prefix.push(k);
            rec(prefix, left - 1, rest - k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if num_vars == 0 {
        if degree == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(&mut Vec::new(), num_vars, degree, &mut out);
    out
}
