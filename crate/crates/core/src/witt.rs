//! Witt vectors of length two over `F_q`, in Witt coordinates `(a0; a1)`.
//!
//! `W_2(F_{p^n})` is the Galois ring `GR(p^2, n)`. Addition carries
//! `c(a, b) = sum_{0<i<p} ((-1)^i / i) a^i b^(p-i)`, which is
//! `(a^p + b^p - (a + b)^p) / p` reduced mod `p`; multiplication is
//! `(a0 b0, a0^p b1 + b0^p a1)` since `p a1 b1` dies in characteristic `p`.
//!
//! Multiplication by `p` is Frobenius-semilinear in the second coordinate:
//! `p * x~ = (0; x^p)` for any lift `x~` of `x`. [`Witt2::times_p`] and
//! [`Witt2::divide_by_p`] keep that twist explicit.

use std::fmt;

use thiserror::Error;

use crate::field::{Field, Fq};
use crate::ring::CoeffRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WittError {
    #[error("element with zero residue is not a unit")]
    NonUnit,
    #[error("element does not reduce to 1")]
    NotPrincipalUnit,
    #[error("exponent {mu} is divisible by the characteristic {p}")]
    MuDivisibleByP { mu: u64, p: u32 },
    #[error("the Z/p^2 model only exists for prime fields")]
    NotPrimeField,
    #[error("element is not a multiple of p")]
    NotDivisibleByP,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WittElement {
    pub a0: Fq,
    pub a1: Fq,
}

impl WittElement {
    pub const ZERO: WittElement = WittElement { a0: Fq::ZERO, a1: Fq::ZERO };
    pub const ONE: WittElement = WittElement { a0: Fq::ONE, a1: Fq::ZERO };

    pub fn new(a0: Fq, a1: Fq) -> Self {
        WittElement { a0, a1 }
    }
}

/// The ring `W_2(F_q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witt2 {
    field: Field,
    // (i, (-1)^i / i mod p) for 0 < i < p
    carry: Vec<(u64, Fq)>,
}

impl Witt2 {
    pub fn new(field: Field) -> Self {
        let p = field.p() as u64;
        let carry = (1..p)
            .map(|i| {
                let inv_i = field.inv(field.from_int(i as i64)).expect("0 < i < p");
                let c = if i % 2 == 0 { inv_i } else { field.neg(inv_i) };
                (i, c)
            })
            .collect();
        Witt2 { field, carry }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    fn carry(&self, a: Fq, b: Fq) -> Fq {
        let k = &self.field;
        if a.is_zero() || b.is_zero() {
            return Fq::ZERO;
        }
        let p = k.p() as u64;
        self.carry.iter().fold(Fq::ZERO, |acc, &(i, c)| {
            k.add(acc, k.mul(c, k.mul(k.pow(a, i), k.pow(b, p - i))))
        })
    }

    pub fn w_add(&self, x: WittElement, y: WittElement) -> WittElement {
        let k = &self.field;
        WittElement {
            a0: k.add(x.a0, y.a0),
            a1: k.add(k.add(x.a1, y.a1), self.carry(x.a0, y.a0)),
        }
    }

    pub fn w_neg(&self, x: WittElement) -> WittElement {
        let k = &self.field;
        let b0 = k.neg(x.a0);
        WittElement { a0: b0, a1: k.sub(k.neg(x.a1), self.carry(x.a0, b0)) }
    }

    pub fn w_sub(&self, x: WittElement, y: WittElement) -> WittElement {
        self.w_add(x, self.w_neg(y))
    }

    pub fn w_mul(&self, x: WittElement, y: WittElement) -> WittElement {
        let k = &self.field;
        WittElement {
            a0: k.mul(x.a0, y.a0),
            a1: k.add(k.mul(k.frobenius(x.a0), y.a1), k.mul(k.frobenius(y.a0), x.a1)),
        }
    }

    /// `(a0^-1; -a1 a0^(-2p))`.
    pub fn w_inv(&self, x: WittElement) -> Result<WittElement, WittError> {
        let k = &self.field;
        let b0 = k.inv(x.a0).map_err(|_| WittError::NonUnit)?;
        let b1 = k.neg(k.mul(x.a1, k.pow(b0, 2 * k.p() as u64)));
        Ok(WittElement { a0: b0, a1: b1 })
    }

    /// Reduction modulo `p`.
    pub fn reduce(&self, x: WittElement) -> Fq {
        x.a0
    }

    pub fn teichmuller(&self, a: Fq) -> WittElement {
        WittElement { a0: a, a1: Fq::ZERO }
    }

    /// `p * x~` for any lift `x~` of `a`.
    pub fn times_p(&self, a: Fq) -> WittElement {
        WittElement { a0: Fq::ZERO, a1: self.field.frobenius(a) }
    }

    /// Inverse of [`Witt2::times_p`] on the ideal `p W_2`.
    pub fn divide_by_p(&self, x: WittElement) -> Result<Fq, WittError> {
        if !x.a0.is_zero() {
            return Err(WittError::NotDivisibleByP);
        }
        Ok(self.field.frobenius_inv(x.a1))
    }

    /// `tau(base) + p * correction`.
    pub fn compose(&self, base: Fq, correction: Fq) -> WittElement {
        self.w_add(self.teichmuller(base), self.times_p(correction))
    }

    /// The `correction` with `x = tau(reduce(x)) + p * correction`.
    pub fn correction(&self, x: WittElement) -> Fq {
        let diff = self.w_sub(x, self.teichmuller(x.a0));
        self.divide_by_p(diff).expect("x - tau(r(x)) lies in pW_2")
    }

    pub fn is_unit(&self, x: WittElement) -> bool {
        !x.a0.is_zero()
    }

    /// The root `v = (1; w / mu)` of a principal unit `u = (1; w)`, using
    /// `(1; a)(1; b) = (1; a + b)`.
    pub fn principal_unit_root(&self, u: WittElement, mu: u64) -> Result<WittElement, WittError> {
        let k = &self.field;
        if u.a0 != Fq::ONE {
            return Err(WittError::NotPrincipalUnit);
        }
        if mu % k.p() as u64 == 0 {
            return Err(WittError::MuDivisibleByP { mu, p: k.p() });
        }
        let mu_inv = k.inv(k.from_int((mu % k.p() as u64) as i64)).expect("p does not divide mu");
        Ok(WittElement { a0: Fq::ONE, a1: k.mul(u.a1, mu_inv) })
    }

    /// `phi(a0, a1) = a0^p + p a1 mod p^2` on integer representatives.
    pub fn iso_zp2(&self, x: WittElement) -> Result<u64, WittError> {
        let k = &self.field;
        if k.degree() != 1 {
            return Err(WittError::NotPrimeField);
        }
        let p = k.p() as u64;
        let p2 = p * p;
        Ok((teichmuller_int(x.a0.raw() as u64, p) + p * x.a1.raw() as u64) % p2)
    }

    /// Inverse of [`Witt2::iso_zp2`].
    pub fn from_zp2(&self, m: u64) -> Result<WittElement, WittError> {
        let k = &self.field;
        if k.degree() != 1 {
            return Err(WittError::NotPrimeField);
        }
        Ok(self.int_image(m as i64))
    }

    fn int_image(&self, v: i64) -> WittElement {
        let k = &self.field;
        let p = k.p() as u64;
        let p2 = (p * p) as i64;
        let m = v.rem_euclid(p2) as u64;
        let a0 = m % p;
        let t = teichmuller_int(a0, p);
        let a1 = ((m + p * p - t) % (p * p)) / p;
        WittElement { a0: k.from_int(a0 as i64), a1: k.from_int(a1 as i64) }
    }

    pub fn format(&self, x: WittElement) -> String {
        format!("({}; {})", self.field.format(x.a0), self.field.format(x.a1))
    }
}

/// `a^p mod p^2`.
fn teichmuller_int(a: u64, p: u64) -> u64 {
    let m = p * p;
    let mut acc = 1u64;
    for _ in 0..p {
        acc = acc * a % m;
    }
    acc
}

impl CoeffRing for Witt2 {
    type Elem = WittElement;

    fn zero(&self) -> WittElement {
        WittElement::ZERO
    }

    fn one(&self) -> WittElement {
        WittElement::ONE
    }

    fn add(&self, a: WittElement, b: WittElement) -> WittElement {
        self.w_add(a, b)
    }

    fn neg(&self, a: WittElement) -> WittElement {
        self.w_neg(a)
    }

    fn mul(&self, a: WittElement, b: WittElement) -> WittElement {
        self.w_mul(a, b)
    }

    fn from_int(&self, v: i64) -> WittElement {
        self.int_image(v)
    }

    fn unit_inverse(&self, a: WittElement) -> Option<WittElement> {
        self.w_inv(a).ok()
    }

    fn format_elem(&self, a: WittElement) -> String {
        self.format(a)
    }
}

/// A Witt element printed as `(a0; a1)`.
pub struct DisplayWitt<'a>(pub &'a Witt2, pub WittElement);

impl fmt::Display for DisplayWitt<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.format(self.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(p: u64, n: u32) -> Witt2 {
        Witt2::new(Field::new(p, n, None).unwrap())
    }

    fn el(r: &Witt2, a0: i64, a1: i64) -> WittElement {
        WittElement::new(r.field().from_int(a0), r.field().from_int(a1))
    }

    #[test]
    fn addition_examples_p3() {
        let r = w(3, 1);
        assert_eq!(r.w_add(el(&r, 1, 0), el(&r, 1, 0)), el(&r, 2, 1));
        assert_eq!(r.w_add(el(&r, 2, 0), el(&r, 2, 0)), el(&r, 1, 2));
        let x = el(&r, 2, 1);
        assert_eq!(r.w_add(x, WittElement::ZERO), x);
    }

    #[test]
    fn multiplication_examples_p3() {
        let r = w(3, 1);
        assert_eq!(r.w_mul(el(&r, 0, 1), el(&r, 0, 1)), WittElement::ZERO);
        // 8 * 8 = 64 = 1 mod 9
        assert_eq!(r.iso_zp2(el(&r, 2, 0)).unwrap(), 8);
        assert_eq!(r.w_mul(el(&r, 2, 0), el(&r, 2, 0)), el(&r, 1, 0));
    }

    #[test]
    fn inverse_examples() {
        let r = w(3, 1);
        assert_eq!(r.w_inv(el(&r, 1, 1)).unwrap(), el(&r, 1, 2));
        assert_eq!(r.w_inv(el(&r, 0, 1)), Err(WittError::NonUnit));
        let k = r.field().clone();
        for a in k.elements().skip(1) {
            assert_eq!(r.w_inv(r.teichmuller(a)).unwrap(), r.teichmuller(k.inv(a).unwrap()));
        }
    }

    #[test]
    fn times_p_examples() {
        let r = w(3, 1);
        assert_eq!(r.times_p(Fq::ZERO), WittElement::ZERO);
        assert_eq!(r.times_p(r.field().from_int(2)), el(&r, 0, 2));
        // 3 * tau(2) = 24 = 6 mod 9
        assert_eq!(r.iso_zp2(el(&r, 0, 2)).unwrap(), 6);
    }

    #[test]
    fn times_p_ignores_the_choice_of_lift() {
        for (p, n) in [(2, 2), (3, 2), (5, 1), (7, 1)] {
            let r = w(p, n);
            let k = r.field().clone();
            for a in k.elements() {
                for c in k.elements().take(6) {
                    let lift = WittElement::new(a, c);
                    let mut acc = WittElement::ZERO;
                    for _ in 0..p {
                        acc = r.w_add(acc, lift);
                    }
                    assert_eq!(acc, r.times_p(a));
                    assert_eq!(r.w_mul(r.from_int(p as i64), lift), r.times_p(a));
                }
            }
        }
    }

    #[test]
    fn principal_unit_roots() {
        let r = w(3, 1);
        let u = el(&r, 1, 1);
        assert_eq!(r.principal_unit_root(u, 1).unwrap(), u);
        assert_eq!(r.principal_unit_root(u, 2).unwrap(), el(&r, 1, 2));
        assert_eq!(r.principal_unit_root(u, 3), Err(WittError::MuDivisibleByP { mu: 3, p: 3 }));
        assert_eq!(r.principal_unit_root(el(&r, 2, 1), 2), Err(WittError::NotPrincipalUnit));
    }

    #[test]
    fn principal_unit_roots_exhaustive() {
        for (p, n) in [(2u64, 3u32), (3, 2), (5, 1), (7, 1)] {
            let r = w(p, n);
            for a1 in r.field().elements() {
                let u = WittElement::new(Fq::ONE, a1);
                for mu in (1..20u64).filter(|m| m % p != 0) {
                    let v = r.principal_unit_root(u, mu).unwrap();
                    assert_eq!(r.pow(v, mu), u);
                    assert_eq!(r.reduce(v), Fq::ONE);
                }
            }
        }
    }

    #[test]
    fn iso_examples() {
        let r = w(3, 1);
        assert_eq!(r.iso_zp2(el(&r, 1, 0)).unwrap(), 1);
        assert_eq!(r.iso_zp2(el(&r, 2, 1)).unwrap(), 2);
        for a in 0..3 {
            assert_eq!(r.iso_zp2(el(&r, 0, a)).unwrap(), 3 * a as u64);
        }
        assert_eq!(w(3, 2).iso_zp2(WittElement::ONE), Err(WittError::NotPrimeField));
    }

    #[test]
    fn reduce_kernel_is_image_of_times_p() {
        let r = w(3, 2);
        let k = r.field().clone();
        for a0 in k.elements() {
            for a1 in k.elements() {
                let x = WittElement::new(a0, a1);
                let in_kernel = r.reduce(x).is_zero();
                let in_image = k.elements().any(|a| r.times_p(a) == x);
                assert_eq!(in_kernel, in_image);
                assert_eq!(r.is_unit(x), !a0.is_zero());
                assert_eq!(r.compose(a0, r.correction(x)), x);
            }
        }
    }

    fn arb_w(q: u32) -> impl Strategy<Value = (u32, u32)> {
        (0..q, 0..q)
    }

    proptest! {
        #[test]
        fn ring_axioms_gr9_2((a0, a1) in arb_w(9), (b0, b1) in arb_w(9), (c0, c1) in arb_w(9)) {
            let r = w(3, 2);
            let k = r.field().clone();
            let x = WittElement::new(k.from_raw(a0).unwrap(), k.from_raw(a1).unwrap());
            let y = WittElement::new(k.from_raw(b0).unwrap(), k.from_raw(b1).unwrap());
            let z = WittElement::new(k.from_raw(c0).unwrap(), k.from_raw(c1).unwrap());
            prop_assert_eq!(r.w_add(r.w_add(x, y), z), r.w_add(x, r.w_add(y, z)));
            prop_assert_eq!(r.w_add(x, y), r.w_add(y, x));
            prop_assert_eq!(r.w_mul(r.w_mul(x, y), z), r.w_mul(x, r.w_mul(y, z)));
            prop_assert_eq!(r.w_mul(x, r.w_add(y, z)), r.w_add(r.w_mul(x, y), r.w_mul(x, z)));
            prop_assert_eq!(r.w_mul(x, WittElement::ONE), x);
            prop_assert_eq!(r.w_add(x, r.w_neg(x)), WittElement::ZERO);
            prop_assert_eq!(r.reduce(r.w_add(x, y)), k.add(x.a0, y.a0));
            prop_assert_eq!(r.reduce(r.w_mul(x, y)), k.mul(x.a0, y.a0));
            if r.is_unit(x) {
                prop_assert_eq!(r.w_mul(x, r.w_inv(x).unwrap()), WittElement::ONE);
            }
            let (ta, tb) = (r.teichmuller(x.a0), r.teichmuller(y.a0));
            prop_assert_eq!(r.w_mul(ta, tb), r.teichmuller(k.mul(x.a0, y.a0)));
            prop_assert_eq!(r.reduce(ta), x.a0);
        }

        #[test]
        fn ring_axioms_char_two((a0, a1) in arb_w(8), (b0, b1) in arb_w(8)) {
            let r = w(2, 3);
            let k = r.field().clone();
            let x = WittElement::new(k.from_raw(a0).unwrap(), k.from_raw(a1).unwrap());
            let y = WittElement::new(k.from_raw(b0).unwrap(), k.from_raw(b1).unwrap());
            prop_assert_eq!(r.w_sub(r.w_add(x, y), y), x);
            prop_assert_eq!(r.w_add(x, r.w_neg(x)), WittElement::ZERO);
        }
    }
}
