//! Dense univariate polynomials over `F_q` and their factorization:
//! square-free decomposition, distinct-degree splitting, then seeded
//! Cantor-Zassenhaus equal-degree splitting (trace map in characteristic 2).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, Fq};

use super::PolyError;

#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    /// Constant term first; no trailing zeros.
    coeffs: Vec<Fq>,
}

impl std::fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(|&c| self.field.format(c)).collect();
        write!(f, "UniPoly[{}]", cs.join(", "))
    }
}

/// Complete factorization `lc * prod f_i^{m_i}` with monic irreducible `f_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub leading: Fq,
    pub factors: Vec<(UniPoly, u32)>,
}

impl UniPoly {
    pub fn new(field: &Field, mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field: field.clone(), coeffs }
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        UniPoly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        UniPoly::new(field, vec![])
    }

    pub fn one(field: &Field) -> Self {
        UniPoly::new(field, vec![Fq::ONE])
    }

    pub fn x(field: &Field) -> Self {
        UniPoly::new(field, vec![Fq::ZERO, Fq::ONE])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Fq {
        self.coeffs.last().copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Fq::ONE]
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lc()).expect("nonzero");
        self.scale(inv)
    }

    pub fn scale(&self, c: Fq) -> Self {
        UniPoly::new(&self.field, self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let cs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(Fq::ZERO);
                let b = other.coeffs.get(i).copied().unwrap_or(Fq::ZERO);
                k.add(a, b)
            })
            .collect();
        UniPoly::new(k, cs)
    }

    pub fn neg(&self) -> Self {
        UniPoly::new(&self.field, self.coeffs.iter().map(|&a| self.field.neg(a)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let k = &self.field;
        let mut out = vec![Fq::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
        UniPoly::new(k, out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = UniPoly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self), PolyError> {
        if d.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let k = &self.field;
        let mut rem = self.coeffs.clone();
        let dd = d.deg();
        if rem.len() <= dd {
            return Ok((UniPoly::zero(k), self.clone()));
        }
        let inv = k.inv(d.lc()).expect("nonzero");
        let mut quot = vec![Fq::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = k.mul(rem[i], inv);
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            for (j, &b) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = k.sub(rem[idx], k.mul(c, b));
            }
        }
        Ok((UniPoly::new(k, quot), UniPoly::new(k, rem)))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).expect("nonzero divisor").1
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d).expect("nonzero divisor");
        debug_assert!(r.is_zero());
        q
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let k = &self.field;
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| k.mul(k.from_int(i as i64), c))
            .collect();
        UniPoly::new(k, cs)
    }

    pub fn eval(&self, x: Fq) -> Fq {
        let k = &self.field;
        self.coeffs.iter().rev().fold(Fq::ZERO, |acc, &c| k.add(k.mul(acc, x), c))
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut acc = UniPoly::one(&self.field).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            e >>= 1;
        }
        acc
    }

    /// `g` with `g^p = self`, assuming only exponents divisible by `p` occur.
    fn pth_root(&self) -> Self {
        let k = &self.field;
        let p = k.p() as usize;
        let cs = self.coeffs.iter().step_by(p).map(|&c| k.frobenius_inv(c)).collect();
        UniPoly::new(k, cs)
    }

    /// Square-free decomposition of a monic polynomial: pairs `(g_i, i)`
    /// with `g_i` square-free and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let k = &self.field;
        let f = self.monic();
        let mut out = Vec::new();
        if f.deg() == 0 {
            return out;
        }
        let df = f.derivative();
        let mut c = f.gcd(&df);
        let mut w = f.div_exact(&c);
        let mut i = 1u32;
        while w.deg() > 0 {
            let y = w.gcd(&c);
            let z = w.div_exact(&y);
            if z.deg() > 0 {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = c.div_exact(&w);
        }
        if c.deg() > 0 {
            let p = k.p();
            for (g, m) in c.pth_root().squarefree_decomposition() {
                out.push((g, m * p));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic square-free polynomial.
    fn distinct_degree(&self) -> Vec<(UniPoly, usize)> {
        let k = &self.field;
        let q = k.size() as u64;
        let mut out = Vec::new();
        let mut f = self.clone();
        let x = UniPoly::x(k);
        let mut h = x.clone();
        let mut d = 0usize;
        while f.deg() >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(q, &f);
            let g = f.gcd(&h.sub(&x));
            if g.deg() > 0 {
                f = f.div_exact(&g);
                h = h.rem(&f);
                out.push((g, d));
            }
        }
        if f.deg() > 0 {
            let deg = f.deg();
            out.push((f, deg));
        }
        out
    }

    fn random_below(&self, degree: usize, rng: &mut impl Rng) -> Self {
        let k = &self.field;
        let cs = (0..degree).map(|_| k.from_raw(rng.gen_range(0..k.size())).unwrap()).collect();
        UniPoly::new(k, cs)
    }

    /// Splits a monic square-free product of irreducibles of degree `d`.
    fn equal_degree(&self, d: usize, rng: &mut impl Rng) -> Vec<UniPoly> {
        let k = &self.field;
        let n = self.deg();
        if n == d {
            return vec![self.clone()];
        }
        let q = k.size() as u64;
        loop {
            let a = self.random_below(n, rng);
            if a.deg() == 0 {
                continue;
            }
            let g = a.gcd(self);
            let splitter = if g.deg() > 0 {
                g
            } else if k.p() == 2 {
                // absolute trace to F_2 of a, over F_{q^d}
                let bits = k.degree() as usize * d;
                let mut t = a.clone();
                let mut cur = a.clone();
                for _ in 1..bits {
                    cur = cur.mul_mod(&cur, self);
                    t = t.add(&cur);
                }
                self.gcd(&t)
            } else {
                // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q - 1)/2)
                let mut norm = a.clone();
                let mut cur = a.clone();
                for _ in 1..d {
                    cur = cur.pow_mod(q, self);
                    norm = norm.mul_mod(&cur, self);
                }
                let b = norm.pow_mod((q - 1) / 2, self).sub(&UniPoly::one(k));
                self.gcd(&b)
            };
            if splitter.deg() > 0 && splitter.deg() < n {
                let other = self.div_exact(&splitter);
                let mut out = splitter.equal_degree(d, rng);
                out.extend(other.equal_degree(d, rng));
                return out;
            }
        }
    }

    /// Complete factorization with the given PRNG.
    pub fn factor_with(&self, rng: &mut impl Rng) -> Result<Factorization, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let leading = self.lc();
        let mut factors = Vec::new();
        for (sqf, mult) in self.squarefree_decomposition() {
            for (block, d) in sqf.distinct_degree() {
                for f in block.equal_degree(d, rng) {
                    factors.push((f, mult));
                }
            }
        }
        factors.sort_by(|a, b| (a.0.deg(), &a.0.coeffs).cmp(&(b.0.deg(), &b.0.coeffs)));
        Ok(Factorization { leading, factors })
    }

    /// Complete factorization with a ChaCha PRNG seeded by `seed`.
    pub fn factor(&self, seed: u64) -> Result<Factorization, PolyError> {
        self.factor_with(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// Roots in `F_q`, in canonical order, without multiplicity.
    pub fn roots(&self, seed: u64) -> Result<Vec<Fq>, PolyError> {
        let fac = self.factor(seed)?;
        let k = &self.field;
        let mut out: Vec<Fq> = fac
            .factors
            .iter()
            .filter(|(f, _)| f.deg() == 1)
            .map(|(f, _)| k.neg(f.coeffs[0]))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Image under a field embedding.
    pub fn embed(&self, ext: &crate::field::Extension) -> UniPoly {
        UniPoly::new(ext.field(), self.coeffs.iter().map(|&c| ext.embed(c)).collect())
    }
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self, field: &Field) -> UniPoly {
        self.factors
            .iter()
            .fold(UniPoly::new(field, vec![self.leading]), |acc, (f, m)| acc.mul(&f.pow(*m as u64)))
    }
}
