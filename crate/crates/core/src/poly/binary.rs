//! Binary forms as univariate polynomials plus a point at infinity.

use crate::arith;
use crate::field::{Field, Fq};

use super::{Form, PolyError, UniPoly};

/// `f = leading * prod g_j^{m_j}` with each `g_j` a monic irreducible binary
/// form; the factor `X1` (the point `[1:0]`) is listed last when present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryFactorization {
    pub leading: Fq,
    pub factors: Vec<(Form<Field>, u32)>,
}

/// `f(X0, 1)` and the multiplicity of the point `X1 = 0`.
pub fn dehomogenize_binary(f: &Form<Field>) -> Result<(UniPoly, u32), PolyError> {
    if f.num_vars() != 2 {
        return Err(PolyError::NotBinary);
    }
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let k = f.ring();
    let d = f.degree() as usize;
    let mut cs = vec![Fq::ZERO; d + 1];
    for (e, c) in f.terms() {
        cs[e[0] as usize] = *c;
    }
    let g = UniPoly::new(k, cs);
    let at_infinity = (d - g.degree().expect("nonzero")) as u32;
    Ok((g, at_infinity))
}

/// Homogenizes `g(X0)` to a binary form of the given degree.
pub fn homogenize_binary(g: &UniPoly, degree: u32) -> Form<Field> {
    let k = g.field();
    let mut f = Form::zero(k, 2, degree);
    for (i, &c) in g.coeffs().iter().enumerate() {
        f.add_term(vec![i as u32, degree - i as u32], c);
    }
    f
}

pub fn binary_factor(f: &Form<Field>, seed: u64) -> Result<BinaryFactorization, PolyError> {
    let (g, at_infinity) = dehomogenize_binary(f)?;
    let fac = g.factor(seed)?;
    let mut factors: Vec<(Form<Field>, u32)> = fac
        .factors
        .iter()
        .map(|(h, m)| (homogenize_binary(h, h.degree().unwrap() as u32), *m))
        .collect();
    if at_infinity > 0 {
        factors.push((Form::variable(f.ring(), 2, 1), at_infinity));
    }
    Ok(BinaryFactorization { leading: fac.leading, factors })
}

impl BinaryFactorization {
    /// Largest `mu | n` such that `f` is a `mu`-th power: every multiplicity
    /// divisible by `mu` and the leading coefficient a `mu`-th power.
    pub fn mu_max(&self, field: &Field, n: u64) -> u64 {
        let g = self.factors.iter().fold(0u64, |acc, (_, m)| arith::gcd(acc, *m as u64));
        arith::divisors(n)
            .into_iter()
            .rev()
            .find(|&mu| {
                (g == 0 || g % mu == 0) && field.mu_power_root(self.leading, mu).expect("nonzero").is_some()
            })
            .unwrap_or(1)
    }

    pub fn expand(&self, field: &Field, degree: u32) -> Form<Field> {
        self.factors
            .iter()
            .fold(Form::constant(field, 2, self.leading), |acc, (g, m)| acc.mul(&g.pow(*m)).unwrap())
            .with_degree(degree)
    }
}
