//! The coefficient-ring interface shared by `F_q` and `W_2(F_q)`.

use std::fmt::Debug;
use std::hash::Hash;

use crate::field::{Field, Fq};

/// A commutative ring context. Elements are plain values; all arithmetic
/// goes through the context.
pub trait CoeffRing: Clone + PartialEq + Debug + Send + Sync {
    type Elem: Copy + Eq + Ord + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// Image of an integer.
    fn from_int(&self, v: i64) -> Self::Elem;
    /// Multiplicative inverse of a unit.
    fn unit_inverse(&self, a: Self::Elem) -> Option<Self::Elem>;
    fn format_elem(&self, a: Self::Elem) -> String;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn pow(&self, a: Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

impl CoeffRing for Field {
    type Elem = Fq;

    fn zero(&self) -> Fq {
        Fq::ZERO
    }

    fn one(&self) -> Fq {
        Fq::ONE
    }

    fn add(&self, a: Fq, b: Fq) -> Fq {
        Field::add(self, a, b)
    }

    fn neg(&self, a: Fq) -> Fq {
        Field::neg(self, a)
    }

    fn sub(&self, a: Fq, b: Fq) -> Fq {
        Field::sub(self, a, b)
    }

    fn mul(&self, a: Fq, b: Fq) -> Fq {
        Field::mul(self, a, b)
    }

    fn from_int(&self, v: i64) -> Fq {
        Field::from_int(self, v)
    }

    fn unit_inverse(&self, a: Fq) -> Option<Fq> {
        self.inv(a).ok()
    }

    fn format_elem(&self, a: Fq) -> String {
        self.format(a)
    }

    fn pow(&self, a: Fq, e: u64) -> Fq {
        Field::pow(self, a, e)
    }
}
