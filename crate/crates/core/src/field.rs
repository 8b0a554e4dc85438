//! Finite fields `F_q = F_p[a]/(f(a))` in a fixed polynomial basis.
//!
//! Elements are stored as the integer `c_0 + c_1 p + ... + c_{n-1} p^{n-1}` of
//! their basis coordinates, so the canonical ordering of elements is the
//! ordering of that integer (highest coordinate most significant). Products
//! go through exp/log tables built from a generator of `F_q^*` found by
//! exhaustive order testing; `q` is capped at `2^20`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arith;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrimeP(u64),
    #[error("modulus {0} is reducible over F_{1}")]
    ReducibleModulus(String, u32),
    #[error("malformed modulus: {0}")]
    MalformedModulus(String),
    #[error("field size {p}^{n} exceeds the supported bound 2^20")]
    SizeOverflow { p: u64, n: u32 },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{n} does not divide q - 1 = {q_minus_1}")]
    OrderNotDividing { n: u64, q_minus_1: u64 },
    #[error("zero has no multiplicative roots")]
    ZeroInput,
}

/// A field element, meaningful only together with its [`Field`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fq(u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    /// Integer encoding of the coordinate vector.
    pub fn raw(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct FieldInner {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Parameters and arithmetic tables of `F_{p^n}`. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.n == other.0.n && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.descriptor())
    }
}

impl Field {
    /// Builds `F_{p^n}`. Without a modulus the lexicographically smallest monic
    /// irreducible of degree `n` is used (coefficients listed constant term first,
    /// compared from the constant term on).
    pub fn new(p: u64, n: u32, modulus: Option<&[u32]>) -> Result<Field, FieldError> {
        if !arith::is_prime(p) {
            return Err(FieldError::NonPrimeP(p));
        }
        if n == 0 {
            return Err(FieldError::MalformedModulus("extension degree must be at least 1".into()));
        }
        let q = (p as u128).checked_pow(n).filter(|&q| q <= MAX_FIELD_SIZE as u128);
        let Some(q) = q else {
            return Err(FieldError::SizeOverflow { p, n });
        };
        let p32 = p as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != n as usize + 1 || m[n as usize] != 1 {
                    return Err(FieldError::MalformedModulus(format!(
                        "expected a monic coefficient list of length {}, got {:?}",
                        n + 1,
                        m
                    )));
                }
                if let Some(c) = m.iter().find(|&&c| c >= p32) {
                    return Err(FieldError::MalformedModulus(format!("coefficient {c} is not reduced mod {p}")));
                }
                if !fp::is_irreducible(m, p32) {
                    return Err(FieldError::ReducibleModulus(join(m), p32));
                }
                m.to_vec()
            }
            None => fp::smallest_irreducible(n as usize, p32),
        };
        let q = q as u32;
        let (exp, log) = build_tables(p32, n, q, &modulus);
        Ok(Field(Arc::new(FieldInner { p: p32, n, q, modulus, exp, log })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.n
    }

    pub fn size(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// `p^n:c_0,...,c_n`, e.g. `3^2:1,0,1`.
    pub fn descriptor(&self) -> String {
        format!("{}^{}:{}", self.0.p, self.0.n, join(&self.0.modulus))
    }

    pub fn zero(&self) -> Fq {
        Fq::ZERO
    }

    pub fn one(&self) -> Fq {
        Fq::ONE
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, v: i64) -> Fq {
        Fq(v.rem_euclid(self.0.p as i64) as u32)
    }

    /// Element with the given polynomial-basis coordinates (constant first).
    pub fn from_coords(&self, coords: &[i64]) -> Fq {
        let p = self.0.p as i64;
        let mut acc = 0u32;
        let mut place = 1u32;
        for (i, &c) in coords.iter().enumerate() {
            if i >= self.0.n as usize {
                break;
            }
            acc += c.rem_euclid(p) as u32 * place;
            place = place.wrapping_mul(self.0.p);
        }
        Fq(acc)
    }

    pub fn from_raw(&self, raw: u32) -> Option<Fq> {
        (raw < self.0.q).then_some(Fq(raw))
    }

    pub fn coords(&self, a: Fq) -> Vec<u32> {
        let mut v = a.0;
        (0..self.0.n)
            .map(|_| {
                let d = v % self.0.p;
                v /= self.0.p;
                d
            })
            .collect()
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.0.q).map(Fq)
    }

    pub fn is_prime_field_element(&self, a: Fq) -> bool {
        a.0 < self.0.p
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let p = self.0.p;
        if self.0.n == 1 {
            return Fq((a.0 + b.0) % p);
        }
        if p == 2 {
            return Fq(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.0.n {
            out += ((x % p + y % p) % p) * place;
            place *= p;
            x /= p;
            y /= p;
        }
        Fq(out)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.n == 1 {
            return Fq((p - a.0) % p);
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.0.n {
            out += ((p - x % p) % p) * place;
            place *= p;
            x /= p;
        }
        Fq(out)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        let qm1 = self.0.q - 1;
        let e = (self.0.log[a.0 as usize] as u64 + self.0.log[b.0 as usize] as u64) % qm1 as u64;
        Fq(self.0.exp[e as usize])
    }

    pub fn inv(&self, a: Fq) -> Result<Fq, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let qm1 = self.0.q - 1;
        Ok(Fq(self.0.exp[((qm1 - self.0.log[a.0 as usize]) % qm1) as usize]))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.0 == 0 {
            return Fq::ZERO;
        }
        let qm1 = (self.0.q - 1) as u128;
        let l = (self.0.log[a.0 as usize] as u128 * (e as u128 % qm1)) % qm1;
        Fq(self.0.exp[l as usize])
    }

    /// `a^p`.
    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(a, self.0.p as u64)
    }

    /// The unique `b` with `b^p = a`.
    pub fn frobenius_inv(&self, a: Fq) -> Fq {
        self.pow(a, (self.0.p as u64).pow(self.0.n - 1))
    }

    /// Discrete logarithm to the table generator; `None` for zero.
    pub fn log(&self, a: Fq) -> Option<u32> {
        (a.0 != 0).then(|| self.0.log[a.0 as usize])
    }

    pub fn generator(&self) -> Fq {
        Fq(self.0.exp[if self.0.q > 2 { 1 } else { 0 }])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fq) -> Result<u64, FieldError> {
        let l = self.log(a).ok_or(FieldError::ZeroInput)? as u64;
        let qm1 = (self.0.q - 1) as u64;
        Ok(qm1 / arith::gcd(l, qm1))
    }

    /// An element of exact multiplicative order `order`.
    pub fn primitive_root_of_unity(&self, order: u64) -> Result<Fq, FieldError> {
        let qm1 = (self.0.q - 1) as u64;
        if order == 0 || qm1 % order != 0 {
            return Err(FieldError::OrderNotDividing { n: order, q_minus_1: qm1 });
        }
        Ok(Fq(self.0.exp[((qm1 / order) % qm1) as usize]))
    }

    /// All `mu`-th roots of unity in `F_q`, in canonical order.
    pub fn roots_of_unity(&self, mu: u64) -> Vec<Fq> {
        let qm1 = (self.0.q - 1) as u64;
        let g = arith::gcd(mu, qm1);
        let step = qm1 / g;
        let mut out: Vec<Fq> = (0..g).map(|j| Fq(self.0.exp[(j * step) as usize])).collect();
        out.sort();
        out
    }

    /// Smallest `d` with `d^mu = c`, if any. Solvable iff `c^((q-1)/g) = 1`
    /// with `g = gcd(mu, q - 1)`.
    pub fn mu_power_root(&self, c: Fq, mu: u64) -> Result<Option<Fq>, FieldError> {
        let l = self.log(c).ok_or(FieldError::ZeroInput)? as u64;
        if mu == 0 {
            return Ok((c == Fq::ONE).then_some(Fq::ONE));
        }
        let qm1 = (self.0.q - 1) as u64;
        let g = arith::gcd(mu, qm1);
        if l % g != 0 {
            return Ok(None);
        }
        let m = qm1 / g;
        let k0 = if m == 1 { 0 } else { (l / g) as u128 * mod_inverse((mu / g) % m, m) as u128 % m as u128 };
        let best = (0..g).map(|j| Fq(self.0.exp[((k0 as u64 + j * m) % qm1) as usize])).min();
        Ok(best)
    }

    /// Builds `F_{q^m}` together with an embedding of `self` into it.
    pub fn extension(&self, m: u32) -> Result<Extension, FieldError> {
        if m <= 1 {
            return Ok(Extension { big: self.clone(), image: self.elements().collect(), degree: 1 });
        }
        let big = Field::new(self.0.p as u64, self.0.n * m, None)?;
        // a root of our modulus in the big field fixes the embedding
        let root = big
            .elements()
            .find(|&r| {
                let mut acc = Fq::ZERO;
                for &c in self.0.modulus.iter().rev() {
                    acc = big.add(big.mul(acc, r), Fq(c));
                }
                acc.is_zero()
            })
            .expect("a degree-n irreducible splits in every extension of degree divisible by n");
        let image = self
            .elements()
            .map(|a| {
                let mut acc = Fq::ZERO;
                for &c in self.coords(a).iter().rev() {
                    acc = big.add(big.mul(acc, root), Fq(c));
                }
                acc
            })
            .collect();
        Ok(Extension { big, image, degree: m })
    }

    /// Renders an element in polynomial-basis notation with generator `a`.
    pub fn format(&self, x: Fq) -> String {
        if self.0.n == 1 {
            return x.0.to_string();
        }
        let coords = self.coords(x);
        let mut parts = Vec::new();
        for (i, &c) in coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let part = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "a".to_string(),
                (1, c) => format!("{c}*a"),
                (i, 1) => format!("a^{i}"),
                (i, c) => format!("{c}*a^{i}"),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Binds an element to this field.
    pub fn element(&self, x: Fq) -> FqElement {
        FqElement { field: self.clone(), value: x }
    }
}

/// `F_q` embedded into `F_{q^m}`.
#[derive(Clone, Debug)]
pub struct Extension {
    big: Field,
    image: Vec<Fq>,
    degree: u32,
}

impl Extension {
    pub fn field(&self) -> &Field {
        &self.big
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn embed(&self, a: Fq) -> Fq {
        self.image[a.0 as usize]
    }
}

/// Arithmetic operation selector for [`fq_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// An element carrying its field, for callers that mix fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqElement {
    pub field: Field,
    pub value: Fq,
}

impl fmt::Display for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}

pub fn fq_arith(a: &FqElement, b: &FqElement, op: ArithOp) -> Result<FqElement, FieldError> {
    if a.field != b.field {
        return Err(FieldError::FieldMismatch);
    }
    let k = &a.field;
    let value = match op {
        ArithOp::Add => k.add(a.value, b.value),
        ArithOp::Sub => k.sub(a.value, b.value),
        ArithOp::Mul => k.mul(a.value, b.value),
        ArithOp::Div => k.div(a.value, b.value)?,
    };
    Ok(k.element(value))
}

fn join(v: &[u32]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    old_s.rem_euclid(m as i128) as u64
}

fn build_tables(p: u32, n: u32, q: u32, modulus: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let decode = |mut v: u32| -> Vec<u32> {
        (0..n)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    };
    let encode = |c: &[u32]| -> u32 { c.iter().rev().fold(0u32, |acc, &d| acc * p + d) };
    let slow_mul = |a: u32, b: u32| -> u32 { encode(&fp::mul_mod(&decode(a), &decode(b), modulus, p)) };
    let slow_pow = |a: u32, mut e: u64| -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = slow_mul(acc, base);
            }
            base = slow_mul(base, base);
            e >>= 1;
        }
        acc
    };
    let qm1 = (q - 1) as u64;
    let factors = arith::prime_factors(qm1);
    let generator = (1..q)
        .find(|&g| factors.iter().all(|&r| slow_pow(g, qm1 / r) != 1))
        .expect("F_q^* is cyclic");
    let mut exp = Vec::with_capacity(qm1 as usize);
    let mut log = vec![0u32; q as usize];
    let mut cur = 1u32;
    for i in 0..qm1 as u32 {
        exp.push(cur);
        log[cur as usize] = i;
        cur = slow_mul(cur, generator);
    }
    (exp, log)
}

/// Dense polynomials over `F_p` on `u32` coefficient vectors, constant first.
/// Only what modulus validation and table construction need.
mod fp {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv(a: u32, p: u32) -> u32 {
        let mut acc = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let m = trim(m.to_vec());
        let dm = m.len() - 1;
        let lc_inv = inv(m[dm], p) as u64;
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] as u64 * lc_inv % p as u64;
            for (i, &mi) in m.iter().enumerate() {
                let idx = top - dm + i;
                r[idx] = ((r[idx] as u64 + (p as u64 - c) * mi as u64) % p as u64) as u32;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return vec![0; m.len() - 1];
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        let mut r = rem(&prod, m, p);
        r.resize(m.len() - 1, 0);
        r
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn pow_p_mod(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut acc = {
            let mut one = vec![0; m.len() - 1];
            one[0] = 1;
            one
        };
        let mut base = a.to_vec();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, m, p);
            }
            base = mul_mod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let n = f.len() - 1;
        if n == 1 {
            return true;
        }
        let mut x = vec![0u32; n];
        x[1] = 1;
        // frob[k] = x^(p^k) mod f
        let mut frob = vec![x.clone()];
        for _ in 0..n {
            let next = pow_p_mod(frob.last().unwrap(), f, p);
            frob.push(next);
        }
        if trim(frob[n].clone()) != trim(x.clone()) {
            return false;
        }
        for r in crate::arith::prime_factors(n as u64) {
            let k = n / r as usize;
            let mut diff = frob[k].clone();
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(f, &diff, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    pub fn smallest_irreducible(n: usize, p: u32) -> Vec<u32> {
        if n == 1 {
            return vec![0, 1];
        }
        let total = (p as u64).pow(n as u32);
        (0..total)
            .map(|idx| {
                // the constant term is the most significant digit of the enumeration
                let mut f = vec![0u32; n + 1];
                let mut v = idx;
                for i in (0..n).rev() {
                    f[i] = (v % p as u64) as u32;
                    v /= p as u64;
                }
                f[n] = 1;
                f
            })
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree")
    }
}
