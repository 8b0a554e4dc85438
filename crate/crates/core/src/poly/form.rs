//! Sparse homogeneous forms over a [`CoeffRing`].

use std::collections::BTreeMap;
use std::fmt;

use crate::field::{Field, Fq};
use crate::ring::CoeffRing;
use crate::witt::Witt2;

use super::PolyError;

/// Exponent vector; entries sum to the form's degree.
pub type Exponent = Vec<u32>;

/// A homogeneous polynomial of fixed degree in `num_vars` variables.
///
/// Terms are kept in a `BTreeMap`, so iteration follows lexicographic order
/// with `x0 > x1 > ...`; the last entry is the lex-leading term.
#[derive(Clone, PartialEq, Eq)]
pub struct Form<R: CoeffRing> {
    ring: R,
    num_vars: usize,
    degree: u32,
    terms: BTreeMap<Exponent, R::Elem>,
}

/// Default variable names: `x, y, z, w` for up to four variables, else `x0..`.
pub fn default_var_names(num_vars: usize) -> Vec<String> {
    if num_vars <= 4 {
        ["x", "y", "z", "w"][..num_vars].iter().map(|s| s.to_string()).collect()
    } else {
        (0..num_vars).map(|i| format!("x{i}")).collect()
    }
}

impl<R: CoeffRing> Form<R> {
    pub fn zero(ring: &R, num_vars: usize, degree: u32) -> Self {
        Form { ring: ring.clone(), num_vars, degree, terms: BTreeMap::new() }
    }

    /// Builds a form from terms, summing repeats and dropping zeros.
    pub fn from_terms<I>(ring: &R, num_vars: usize, degree: u32, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Exponent, R::Elem)>,
    {
        let mut out = Form::zero(ring, num_vars, degree);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(PolyError::ArityMismatch { expected: num_vars, found: e.len() });
            }
            if e.iter().sum::<u32>() != degree {
                return Err(PolyError::NotHomogeneous);
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn constant(ring: &R, num_vars: usize, c: R::Elem) -> Self {
        let mut f = Form::zero(ring, num_vars, 0);
        f.add_term(vec![0; num_vars], c);
        f
    }

    pub fn variable(ring: &R, num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        let mut f = Form::zero(ring, num_vars, 1);
        f.add_term(e, ring.one());
        f
    }

    pub fn monomial(ring: &R, exponent: Exponent, c: R::Elem) -> Self {
        let degree = exponent.iter().sum();
        let mut f = Form::zero(ring, exponent.len(), degree);
        f.add_term(exponent, c);
        f
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: R::Elem) {
        debug_assert_eq!(e.len(), self.num_vars);
        if self.ring.is_zero(c) {
            return;
        }
        let ring = &self.ring;
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = ring.add(*o.get(), c);
                if ring.is_zero(s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &R::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> R::Elem {
        self.terms.get(e).copied().unwrap_or_else(|| self.ring.zero())
    }

    /// Lex-leading term.
    pub fn leading_term(&self) -> Option<(&Exponent, R::Elem)> {
        self.terms.iter().next_back().map(|(e, c)| (e, *c))
    }

    fn check_compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch);
        }
        if self.num_vars != other.num_vars {
            return Err(PolyError::ArityMismatch { expected: self.num_vars, found: other.num_vars });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(PolyError::DegreeMismatch { left: self.degree, right: other.degree });
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.ring.neg(*c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut out = Form::zero(&self.ring, self.num_vars, self.degree + other.degree);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, self.ring.mul(*ca, *cb));
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: R::Elem) -> Self {
        let mut out = Form::zero(&self.ring, self.num_vars, self.degree);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), self.ring.mul(c, *a));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Form::constant(&self.ring, self.num_vars, self.ring.one());
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Formal partial derivatives, each of degree `d - 1`.
    pub fn partials(&self) -> Vec<Self> {
        let d = self.degree.saturating_sub(1);
        (0..self.num_vars)
            .map(|i| {
                let mut out = Form::zero(&self.ring, self.num_vars, d);
                for (e, c) in &self.terms {
                    if e[i] == 0 {
                        continue;
                    }
                    let mut e2 = e.clone();
                    e2[i] -= 1;
                    out.add_term(e2, self.ring.mul(self.ring.from_int(e[i] as i64), *c));
                }
                out
            })
            .collect()
    }

    pub fn evaluate(&self, point: &[R::Elem]) -> R::Elem {
        let ring = &self.ring;
        self.terms.iter().fold(ring.zero(), |acc, (e, c)| {
            let m = e.iter().zip(point).fold(*c, |m, (&k, &x)| ring.mul(m, ring.pow(x, k as u64)));
            ring.add(acc, m)
        })
    }

    /// Replaces variable `i` by `images[i]`; all images must share one degree.
    pub fn substitute(&self, images: &[Form<R>]) -> Result<Self, PolyError> {
        if images.len() != self.num_vars {
            return Err(PolyError::ArityMismatch { expected: self.num_vars, found: images.len() });
        }
        let target_vars = images.first().map(|g| g.num_vars).unwrap_or(0);
        let e = images.first().map(|g| g.degree).unwrap_or(0);
        if images.iter().any(|g| g.num_vars != target_vars) {
            return Err(PolyError::ArityMismatch { expected: target_vars, found: 0 });
        }
        if images.iter().any(|g| g.degree != e) {
            return Err(PolyError::NotHomogeneous);
        }
        // cache powers of each image
        let mut powers: Vec<Vec<Form<R>>> = images
            .iter()
            .map(|g| vec![Form::constant(&self.ring, target_vars, self.ring.one()), g.clone()])
            .collect();
        let mut out = Form::zero(&self.ring, target_vars, self.degree * e);
        for (exp, c) in &self.terms {
            let mut term = Form::constant(&self.ring, target_vars, *c);
            for (i, &k) in exp.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&images[i])?;
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][k as usize])?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor` when it exists. Uses the lex-leading
    /// term of `divisor`, whose coefficient must be a unit.
    pub fn divide_exact(&self, divisor: &Self) -> Result<Option<Self>, PolyError> {
        self.check_compatible(divisor)?;
        let Some((lead_e, lead_c)) = divisor.leading_term() else {
            return Err(PolyError::ZeroPolynomial);
        };
        let lead_e = lead_e.clone();
        let lead_inv = self.ring.unit_inverse(lead_c).ok_or(PolyError::NonUnitLeadingCoefficient)?;
        if self.is_zero() {
            let d = self.degree.saturating_sub(divisor.degree);
            return Ok(Some(Form::zero(&self.ring, self.num_vars, d)));
        }
        if self.degree < divisor.degree {
            return Ok(None);
        }
        let mut quotient = Form::zero(&self.ring, self.num_vars, self.degree - divisor.degree);
        let mut rem = self.clone();
        while let Some((e, c)) = rem.leading_term() {
            if e.iter().zip(&lead_e).any(|(a, b)| a < b) {
                return Ok(None);
            }
            let qe: Exponent = e.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            let qc = self.ring.mul(c, lead_inv);
            let t = Form::monomial(&self.ring, qe.clone(), qc);
            rem = rem.sub(&t.mul(divisor)?)?;
            quotient.add_term(qe, qc);
        }
        Ok(Some(quotient))
    }

    /// Reinterprets coefficients through `f` into another ring.
    pub fn map_coeffs<S: CoeffRing>(&self, ring: &S, f: impl Fn(R::Elem) -> S::Elem) -> Form<S> {
        let mut out = Form::zero(ring, self.num_vars, self.degree);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(*c));
        }
        out
    }

    /// Same terms, read with a different stored degree (only for zero forms
    /// or when the degree already matches).
    pub fn with_degree(mut self, degree: u32) -> Self {
        debug_assert!(self.is_zero() || self.degree == degree);
        self.degree = degree;
        self
    }

    /// Renders with the given variable names.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let (neg, coeff) = self.signed_coeff(*c);
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(k, _)| **k > 0)
                .map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
                .collect();
            let body = match (coeff.as_deref(), mono.is_empty()) {
                (None, true) => "1".to_string(),
                (None, false) => mono.join("*"),
                (Some(c), true) => c.to_string(),
                (Some(c), false) => format!("{c}*{}", mono.join("*")),
            };
            match (i, neg) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }

    /// Sign and coefficient text; `None` for a unit coefficient of +-1.
    fn signed_coeff(&self, c: R::Elem) -> (bool, Option<String>) {
        let ring = &self.ring;
        let one = ring.one();
        if c == one {
            return (false, None);
        }
        if c == ring.neg(one) {
            return (true, None);
        }
        // prefer a short negative rendering for small integers
        for k in 2..=64i64 {
            if c == ring.from_int(k) {
                return (false, Some(k.to_string()));
            }
            if c == ring.from_int(-k) {
                return (true, Some(k.to_string()));
            }
        }
        (false, Some(format!("({})", ring.format_elem(c))))
    }
}

impl<R: CoeffRing> fmt::Display for Form<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&default_var_names(self.num_vars)))
    }
}

impl<R: CoeffRing> fmt::Debug for Form<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[deg {}]({})", self.degree, self)
    }
}

impl Form<Field> {
    /// Coefficient-wise Teichmuller lift.
    pub fn teichmuller(&self, w: &Witt2) -> Form<Witt2> {
        self.map_coeffs(w, |c| w.teichmuller(c))
    }

    /// `p * f~` for any lift `f~` of `self`.
    pub fn times_p(&self, w: &Witt2) -> Form<Witt2> {
        self.map_coeffs(w, |c| w.times_p(c))
    }

    /// Monic in the lex order, or zero.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scalar_mul(self.ring.inv(c).expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Whether `self = c * other` for a nonzero scalar `c`.
    pub fn is_associate(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.degree == other.degree && self.monic() == other.monic()
    }

    pub fn lead_coeff(&self) -> Option<Fq> {
        self.leading_term().map(|(_, c)| c)
    }
}

impl Form<Witt2> {
    /// Coefficient-wise reduction mod `p`.
    pub fn reduce(&self) -> Form<Field> {
        let w = self.ring.clone();
        self.map_coeffs(w.field(), |c| w.reduce(c))
    }

    /// The form `e` with `self = p * e~`; fails unless every coefficient
    /// reduces to zero.
    pub fn divide_by_p(&self) -> Result<Form<Field>, PolyError> {
        let w = self.ring.clone();
        let mut out = Form::zero(w.field(), self.num_vars, self.degree);
        for (e, c) in &self.terms {
            let a = w.divide_by_p(*c).map_err(|_| PolyError::NotDivisibleByP)?;
            out.add_term(e.clone(), a);
        }
        Ok(out)
    }

    /// Splits `self = tau(base) + p * correction`.
    pub fn split(&self) -> (Form<Field>, Form<Field>) {
        let base = self.reduce();
        let diff = self.sub(&base.teichmuller(&self.ring)).expect("same ring");
        let corr = diff.divide_by_p().expect("difference reduces to zero");
        (base, corr.with_degree(self.degree))
    }
}
