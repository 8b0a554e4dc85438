//! Geometry of `P^n`: points over extensions, restriction of sections to
//! hyperplanes and rational curves, singularity probing and the cohomology of
//! `O(d)`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::field::{Field, FieldError, Fq};
use crate::poly::{default_var_names, dehomogenize_binary, FactoredDivisor, Form, PolyError, UniPoly};
use crate::ring::CoeffRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjError {
    #[error("malformed restriction target: {0}")]
    MalformedTarget(String),
    #[error("hyperplane has no unit coefficient to solve for")]
    NonUnitPivot,
    #[error("cohomology index {i} out of range for P^{n}")]
    IndexOutOfRange { n: u32, i: u32 },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A point of `P^n(F_{q^m})`, normalized so its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint {
    field: Field,
    ext_degree: u32,
    coords: Vec<Fq>,
}

impl ProjPoint {
    /// `None` for the zero vector.
    pub fn new(field: &Field, ext_degree: u32, coords: Vec<Fq>) -> Option<Self> {
        let first = coords.iter().copied().find(|c| !c.is_zero())?;
        let inv = field.inv(first).ok()?;
        let coords = coords.into_iter().map(|c| field.mul(c, inv)).collect();
        Some(Self { field: field.clone(), ext_degree, coords })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Degree of the coordinate field over the base field.
    pub fn ext_degree(&self) -> u32 {
        self.ext_degree
    }

    pub fn coords(&self) -> &[Fq] {
        &self.coords
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|&c| self.field.format(c)).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

/// Solves `l = 0` for its first variable with a unit coefficient. Returns the
/// pivot and the images of all ambient variables as linear forms in the
/// remaining ones.
pub fn hyperplane_chart<R: CoeffRing>(l: &Form<R>) -> Result<(usize, Vec<Form<R>>), ProjError> {
    if l.degree() != 1 || l.is_zero() {
        return Err(ProjError::MalformedTarget("hyperplane must be a nonzero linear form".into()));
    }
    let ring = l.ring();
    let nv = l.num_vars();
    let unit = |i: usize| {
        let mut e = vec![0; nv];
        e[i] = 1;
        ring.unit_inverse(l.coeff(&e)).map(|inv| (i, inv))
    };
    let (pivot, inv) = (0..nv).find_map(unit).ok_or(ProjError::NonUnitPivot)?;
    let mut solved = Form::zero(ring, nv - 1, 1);
    for (e, c) in l.terms() {
        let j = e.iter().position(|&x| x == 1).expect("linear");
        if j == pivot {
            continue;
        }
        let mut t = vec![0; nv - 1];
        t[if j < pivot { j } else { j - 1 }] = 1;
        solved.add_term(t, ring.neg(ring.mul(*c, inv)));
    }
    let images = (0..nv)
        .map(|j| match j.cmp(&pivot) {
            std::cmp::Ordering::Less => Form::variable(ring, nv - 1, j),
            std::cmp::Ordering::Equal => solved.clone(),
            std::cmp::Ordering::Greater => Form::variable(ring, nv - 1, j - 1),
        })
        .collect();
    Ok((pivot, images))
}

/// A prime divisor of `P^n` that sections can be restricted to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RestrictionTarget {
    /// The hyperplane `l = 0`.
    Hyperplane(Form<Field>),
    /// The image of `P^1` under `[f_0 : ... : f_n]`, binary forms of one degree.
    RationalCurve(Vec<Form<Field>>),
}

impl RestrictionTarget {
    pub fn hyperplane(l: Form<Field>) -> Result<Self, ProjError> {
        let t = Self::Hyperplane(l);
        t.validate()?;
        Ok(t)
    }

    pub fn rational_curve(images: Vec<Form<Field>>) -> Result<Self, ProjError> {
        let t = Self::RationalCurve(images);
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), ProjError> {
        match self {
            Self::Hyperplane(l) => hyperplane_chart(l).map(|_| ()),
            Self::RationalCurve(images) => {
                let malformed = |m: &str| Err(ProjError::MalformedTarget(m.into()));
                let Some(first) = images.first() else {
                    return malformed("curve needs at least one coordinate");
                };
                let e = first.degree();
                if e == 0 {
                    return malformed("curve parametrization must have positive degree");
                }
                if images.iter().any(|g| g.num_vars() != 2 || g.degree() != e || g.ring() != first.ring()) {
                    return malformed("curve coordinates must be binary forms of one degree");
                }
                if base_point(images).is_some() {
                    return malformed("curve parametrization has a base point");
                }
                Ok(())
            }
        }
    }

    pub fn ambient_vars(&self) -> usize {
        match self {
            Self::Hyperplane(l) => l.num_vars(),
            Self::RationalCurve(images) => images.len(),
        }
    }

    /// Degree of `O(1)` pulled back to the target's own coordinates.
    pub fn pullback_degree(&self) -> u32 {
        match self {
            Self::Hyperplane(_) => 1,
            Self::RationalCurve(images) => images[0].degree(),
        }
    }

    /// Whether the target is a copy of `P^1` (lines in the plane, or curves).
    pub fn is_p1(&self) -> bool {
        match self {
            Self::Hyperplane(l) => l.num_vars() == 3,
            Self::RationalCurve(_) => true,
        }
    }

    /// Images of the ambient variables in the target's coordinates.
    pub fn images(&self) -> Result<Vec<Form<Field>>, ProjError> {
        match self {
            Self::Hyperplane(l) => hyperplane_chart(l).map(|(_, im)| im),
            Self::RationalCurve(images) => Ok(images.clone()),
        }
    }

    /// Coordinate names on the target given the ambient names.
    pub fn target_var_names(&self, ambient: &[String]) -> Vec<String> {
        match self {
            Self::Hyperplane(l) => {
                let pivot = hyperplane_chart(l).map(|(p, _)| p).unwrap_or(0);
                ambient.iter().enumerate().filter(|(i, _)| *i != pivot).map(|(_, n)| n.clone()).collect()
            }
            Self::RationalCurve(_) => vec!["u".into(), "v".into()],
        }
    }
}

impl fmt::Display for RestrictionTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Hyperplane(l) => write!(f, "({l} = 0)"),
            Self::RationalCurve(images) => {
                let names = vec!["u".to_string(), "v".to_string()];
                let parts: Vec<String> = images.iter().map(|g| g.format_with(&names)).collect();
                write!(f, "curve({})", parts.join(", "))
            }
        }
    }
}

/// A common zero of binary forms over `F_q`-bar, witnessed by `[1:0]` or by a
/// nontrivial gcd of the dehomogenizations.
fn base_point(forms: &[Form<Field>]) -> Option<()> {
    let nonzero: Vec<&Form<Field>> = forms.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Some(());
    }
    let k = nonzero[0].ring();
    let mut g = UniPoly::zero(k);
    let mut all_vanish_at_infinity = true;
    for f in nonzero {
        let (h, at_infinity) = dehomogenize_binary(f).ok()?;
        all_vanish_at_infinity &= at_infinity > 0;
        g = g.gcd(&h);
    }
    (all_vanish_at_infinity || g.degree().unwrap_or(0) > 0).then_some(())
}

/// `s|_E`; the zero form means `E` lies in the zero locus of `s`.
pub fn restrict(s: &Form<Field>, target: &RestrictionTarget) -> Result<Form<Field>, ProjError> {
    if s.num_vars() != target.ambient_vars() {
        return Err(PolyError::ArityMismatch { expected: target.ambient_vars(), found: s.num_vars() }.into());
    }
    Ok(s.substitute(&target.images()?)?)
}

/// Outcome of a bounded search for singular points of `D_red`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularVerdict {
    /// Every point over `F_{q^m}`, `m <= m_max`, was checked.
    NoSingularPointFound { m_max: u32 },
    SingularAt(ProjPoint),
}

/// Points beyond this count are not enumerated at one extension degree.
pub const POINT_LIMIT: u64 = 20_000_000;

fn point_count(q: u64, num_vars: usize) -> Option<u64> {
    let mut total: u64 = 0;
    let mut pow: u64 = 1;
    for _ in 0..num_vars {
        total = total.checked_add(pow)?;
        pow = pow.checked_mul(q)?;
    }
    Some(total)
}

/// The `idx`-th normalized point in lexicographic order of representatives.
fn point_at(k: &Field, num_vars: usize, mut idx: u64) -> Vec<Fq> {
    let q = k.size() as u64;
    let mut coords = vec![Fq::ZERO; num_vars];
    // the pivot n-1 group is the single point [0:...:0:1]
    for pivot in (0..num_vars).rev() {
        let group = q.pow((num_vars - 1 - pivot) as u32);
        if idx < group {
            coords[pivot] = Fq::ONE;
            for slot in (pivot + 1..num_vars).rev() {
                coords[slot] = k.from_raw((idx % q) as u32).expect("in range");
                idx /= q;
            }
            return coords;
        }
        idx -= group;
    }
    unreachable!("index below the point count")
}

/// Searches `P^n(F_{q^m})` for `m = 1..=m_max` for a point where `D_red` is
/// singular: either all of `f_red` and its partials vanish, or the point lies
/// on two components. Finding nothing is a bounded certificate only.
pub fn singular_probe(d: &FactoredDivisor, m_max: u32) -> Result<SingularVerdict, ProjError> {
    let k = d.field();
    let nv = d.num_vars();
    let f = d.reduced_form();
    let mut checked = 0;
    for m in 1..=m_max.max(1) {
        let Ok(ext) = k.extension(m) else { break };
        let big = ext.field().clone();
        let Some(count) = point_count(big.size() as u64, nv).filter(|&c| c <= POINT_LIMIT) else {
            break;
        };
        let lift = |g: &Form<Field>| g.map_coeffs(&big, |c| ext.embed(c));
        let f_big = lift(&f);
        let partials: Vec<Form<Field>> = f.partials().iter().map(lift).collect();
        let comps: Vec<Form<Field>> = d.components().iter().map(|(c, _)| lift(c)).collect();
        let hit = (0..count).into_par_iter().find_first(|&idx| {
            let pt = point_at(&big, nv, idx);
            if !f_big.evaluate(&pt).is_zero() {
                return false;
            }
            partials.iter().all(|g| g.evaluate(&pt).is_zero())
                || comps.iter().filter(|c| c.evaluate(&pt).is_zero()).count() >= 2
        });
        if let Some(idx) = hit {
            let pt = ProjPoint::new(&big, m, point_at(&big, nv, idx)).expect("nonzero");
            return Ok(SingularVerdict::SingularAt(pt));
        }
        checked = m;
    }
    Ok(SingularVerdict::NoSingularPointFound { m_max: checked })
}

/// Outcome of the exact singularity test for plane curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactVerdict {
    Smooth,
    SingularAt(ProjPoint),
    /// A singular point exists but only over an extension too large to build.
    SingularOverExtension { degree: u32 },
    Inconclusive(String),
}

/// Largest total degree accepted by [`plane_curve_singularity`].
pub const EXACT_PLANE_DEGREE: u32 = 6;

/// Decides whether the plane curve `D_red` is smooth, by eliminating `y`
/// with resultants in the chart `z = 1` and treating the line `z = 0` through
/// gcds of binary forms.
pub fn plane_curve_singularity(d: &FactoredDivisor, seed: u64) -> Result<ExactVerdict, ProjError> {
    if d.num_vars() != 3 {
        return Ok(ExactVerdict::Inconclusive("exact path needs a plane curve".into()));
    }
    let f = d.reduced_form();
    if f.degree() > EXACT_PLANE_DEGREE {
        return Ok(ExactVerdict::Inconclusive(format!("degree {} exceeds {EXACT_PLANE_DEGREE}", f.degree())));
    }
    if f.degree() == 0 {
        return Ok(ExactVerdict::Smooth);
    }
    let k = d.field().clone();
    let mut system = vec![f.clone()];
    system.extend(f.partials().into_iter().filter(|g| !g.is_zero()));

    if let Some(v) = affine_singularity(&k, &system, seed)? {
        return Ok(v);
    }
    line_at_infinity_singularity(&k, &system, seed)
}

/// Bivariate polynomial as coefficients of `y^j` in `F_q[x]`.
type Bivariate = Vec<UniPoly>;

fn chart_z1(k: &Field, g: &Form<Field>) -> Bivariate {
    let dy = g.terms().map(|(e, _)| e[1] as usize).max().unwrap_or(0);
    let mut rows: Vec<Vec<Fq>> = vec![vec![Fq::ZERO; g.degree() as usize + 1]; dy + 1];
    for (e, c) in g.terms() {
        rows[e[1] as usize][e[0] as usize] = *c;
    }
    let mut out: Bivariate = rows.into_iter().map(|r| UniPoly::new(k, r)).collect();
    while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn y_degree(b: &Bivariate) -> usize {
    b.len() - 1
}

/// Determinant over `F_q[x]` by fraction-free elimination.
fn det_poly(k: &Field, mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::one(k);
    }
    let mut sign_neg = false;
    let mut prev = UniPoly::one(k);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return UniPoly::zero(k);
        };
        if piv != col {
            m.swap(piv, col);
            sign_neg = !sign_neg;
        }
        for r in col + 1..n {
            for c in col + 1..n {
                let num = m[r][c].mul(&m[col][col]).sub(&m[r][col].mul(&m[col][c]));
                m[r][c] = num.div_exact(&prev);
            }
            m[r][col] = UniPoly::zero(k);
        }
        prev = m[col][col].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_neg {
        det.neg()
    } else {
        det
    }
}

/// `Res_y(a, b)` as a polynomial in `x`.
fn resultant_y(k: &Field, a: &Bivariate, b: &Bivariate) -> UniPoly {
    let (da, db) = (y_degree(a), y_degree(b));
    let size = da + db;
    let mut m = vec![vec![UniPoly::zero(k); size]; size];
    for r in 0..db {
        for (j, c) in a.iter().enumerate() {
            m[r][r + da - j] = c.clone();
        }
    }
    for r in 0..da {
        for (j, c) in b.iter().enumerate() {
            m[db + r][r + db - j] = c.clone();
        }
    }
    det_poly(k, m)
}

/// A root of `h` in the smallest extension containing one.
fn some_root(k: &Field, h: &UniPoly, seed: u64) -> Result<Option<(crate::field::Extension, Fq)>, ProjError> {
    let fac = h.factor(seed)?;
    let Some((g, _)) = fac.factors.iter().min_by_key(|(g, _)| g.degree()) else {
        return Ok(None);
    };
    let r = g.degree().expect("nonconstant") as u32;
    let Ok(ext) = k.extension(r) else {
        return Ok(None);
    };
    let root = g.embed(&ext).roots(seed)?.into_iter().next().expect("splits in its own extension");
    Ok(Some((ext, root)))
}

fn affine_singularity(k: &Field, system: &[Form<Field>], seed: u64) -> Result<Option<ExactVerdict>, ProjError> {
    let bis: Vec<Bivariate> = system.iter().map(|g| chart_z1(k, g)).collect();
    // every pair must vanish at a common zero; intersect their eliminants
    let mut elim = UniPoly::zero(k);
    for i in 0..bis.len() {
        for j in i + 1..bis.len() {
            let r = if y_degree(&bis[i]) == 0 && y_degree(&bis[j]) == 0 {
                bis[i][0].gcd(&bis[j][0])
            } else {
                resultant_y(k, &bis[i], &bis[j])
            };
            elim = elim.gcd(&r);
        }
    }
    if bis.len() == 1 {
        elim = if y_degree(&bis[0]) == 0 { bis[0][0].clone() } else { UniPoly::zero(k) };
    }
    if elim.is_zero() {
        return Ok(Some(ExactVerdict::Inconclusive("eliminant vanishes identically".into())));
    }
    if elim.degree() == Some(0) {
        return Ok(None);
    }
    let fac = elim.factor(seed)?;
    for (h, _) in &fac.factors {
        let r = h.degree().expect("nonconstant") as u32;
        let Ok(e1) = k.extension(r) else {
            return Ok(Some(ExactVerdict::Inconclusive(format!("candidate needs an extension of degree {r}"))));
        };
        let big = e1.field().clone();
        let x0 = h.embed(&e1).roots(seed)?[0];
        let mut g = UniPoly::zero(&big);
        for b in &bis {
            let coeffs: Vec<Fq> = b.iter().map(|c| c.embed(&e1).eval(x0)).collect();
            g = g.gcd(&UniPoly::new(&big, coeffs));
        }
        let y0 = if g.is_zero() {
            Some((e1.clone(), Fq::ZERO, 1))
        } else if g.degree() == Some(0) {
            None
        } else {
            match some_root(&big, &g, seed)? {
                Some((e2, y)) => Some((e2.clone(), y, e2.degree())),
                None => {
                    let s = g.factor(seed)?.factors.iter().filter_map(|(f, _)| f.degree()).min().unwrap_or(1) as u32;
                    return Ok(Some(ExactVerdict::SingularOverExtension { degree: r * s }));
                }
            }
        };
        if let Some((e2, y, s)) = y0 {
            let top = e2.field().clone();
            let x = if s == 1 && e2.field() == &big { x0 } else { e2.embed(x0) };
            let pt = ProjPoint::new(&top, r * s, vec![x, y, Fq::ONE]).expect("nonzero");
            return Ok(Some(ExactVerdict::SingularAt(pt)));
        }
    }
    Ok(None)
}

fn line_at_infinity_singularity(k: &Field, system: &[Form<Field>], seed: u64) -> Result<ExactVerdict, ProjError> {
    // restrict to z = 0 as binary forms in (x, y)
    let on_line: Vec<Form<Field>> = system
        .iter()
        .map(|g| {
            let mut out = Form::zero(k, 2, g.degree());
            for (e, c) in g.terms().filter(|(e, _)| e[2] == 0) {
                out.add_term(vec![e[0], e[1]], *c);
            }
            out
        })
        .collect();
    let nonzero: Vec<&Form<Field>> = on_line.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        let pt = ProjPoint::new(k, 1, vec![Fq::ONE, Fq::ZERO, Fq::ZERO]).expect("nonzero");
        return Ok(ExactVerdict::SingularAt(pt));
    }
    // [1:0:0]
    if nonzero.iter().all(|g| g.coeff(&[g.degree(), 0]).is_zero()) {
        let pt = ProjPoint::new(k, 1, vec![Fq::ONE, Fq::ZERO, Fq::ZERO]).expect("nonzero");
        return Ok(ExactVerdict::SingularAt(pt));
    }
    // [x:1:0], after swapping so that y is the dehomogenizing variable
    let mut g = UniPoly::zero(k);
    for f in &nonzero {
        let (h, _) = dehomogenize_binary(f)?;
        g = g.gcd(&h);
    }
    if g.degree().unwrap_or(0) == 0 {
        return Ok(ExactVerdict::Smooth);
    }
    match some_root(k, &g, seed)? {
        Some((e, x)) => {
            let pt = ProjPoint::new(e.field(), e.degree(), vec![x, Fq::ONE, Fq::ZERO]).expect("nonzero");
            Ok(ExactVerdict::SingularAt(pt))
        }
        None => {
            let s = g.factor(seed)?.factors.iter().filter_map(|(f, _)| f.degree()).min().unwrap_or(1) as u32;
            Ok(ExactVerdict::SingularOverExtension { degree: s })
        }
    }
}

/// `h^i(P^n, O(d))`.
pub fn cohomology_dim(n: u32, d: i64, i: u32) -> Result<u128, ProjError> {
    if i > n {
        return Err(ProjError::IndexOutOfRange { n, i });
    }
    let n64 = n as i64;
    let binom = |top: i64| arith::binomial(top as u64, n as u64).expect("fits in u128");
    Ok(if i == 0 && d >= 0 {
        binom(n64 + d)
    } else if i == n && -d > n64 {
        binom(-d - 1)
    } else {
        0
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub n: u32,
    pub i: u32,
    pub d_lo: i64,
    pub d_hi: i64,
    pub vanishes: bool,
    pub first_nonzero: Option<i64>,
}

/// Checks `h^i(P^n, O(d)) = 0` for `d_lo <= d <= d_hi`.
pub fn hi_vanishing_check(n: u32, i: u32, d_lo: i64, d_hi: i64) -> Result<VanishingReport, ProjError> {
    if i == 0 || i + 1 > n {
        return Err(ProjError::IndexOutOfRange { n, i });
    }
    let mut first_nonzero = None;
    for d in d_lo..=d_hi {
        if cohomology_dim(n, d, i)? != 0 {
            first_nonzero = Some(d);
            break;
        }
    }
    Ok(VanishingReport { n, i, d_lo, d_hi, vanishes: first_nonzero.is_none(), first_nonzero })
}

/// Names for the ambient coordinates of `P^n`.
pub fn ambient_names(n: usize) -> Vec<String> {
    default_var_names(n + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u64) -> Field {
        Field::new(p, 1, None).unwrap()
    }

    fn form(k: &Field, nv: usize, terms: &[(&[u32], i64)]) -> Form<Field> {
        let d = terms[0].0.iter().sum();
        Form::from_terms(k, nv, d, terms.iter().map(|(e, c)| (e.to_vec(), k.from_int(*c)))).unwrap()
    }

    fn conic(k: &Field) -> Form<Field> {
        form(k, 3, &[(&[2, 0, 0], 1), (&[0, 1, 1], -1)])
    }

    #[test]
    fn restrict_to_lines() {
        let f3 = k(3);
        let s = conic(&f3);
        let y = RestrictionTarget::hyperplane(Form::variable(&f3, 3, 1)).unwrap();
        assert_eq!(restrict(&s, &y).unwrap(), form(&f3, 2, &[(&[2, 0], 1)]));
        assert_eq!(y.target_var_names(&ambient_names(2)), vec!["x", "z"]);
        let x = RestrictionTarget::hyperplane(Form::variable(&f3, 3, 0)).unwrap();
        assert_eq!(restrict(&s, &x).unwrap(), form(&f3, 2, &[(&[1, 1], -1)]));
        let branch = form(&f3, 3, &[(&[1, 1, 0], 1), (&[0, 1, 1], 1)]);
        assert!(restrict(&branch, &y).unwrap().is_zero());
    }

    #[test]
    fn hyperplane_solving() {
        let f5 = k(5);
        // 2x + y + 3z: x = 2y + z
        let l = form(&f5, 3, &[(&[1, 0, 0], 2), (&[0, 1, 0], 1), (&[0, 0, 1], 3)]);
        let (pivot, images) = hyperplane_chart(&l).unwrap();
        assert_eq!(pivot, 0);
        assert_eq!(images[0], form(&f5, 2, &[(&[1, 0], 2), (&[0, 1], 1)]));
        assert!(l.substitute(&images).unwrap().is_zero());
    }

    #[test]
    fn curve_targets() {
        let f5 = k(5);
        let u = Form::variable(&f5, 2, 0);
        let v = Form::variable(&f5, 2, 1);
        // conic [u^2 : uv : v^2]
        let curve = RestrictionTarget::rational_curve(vec![u.pow(2), u.mul(&v).unwrap(), v.pow(2)]).unwrap();
        let s = form(&f5, 3, &[(&[0, 2, 0], 1), (&[1, 0, 1], -1)]);
        assert!(restrict(&s, &curve).unwrap().is_zero());
        assert!(RestrictionTarget::rational_curve(vec![u.pow(2), u.mul(&v).unwrap(), u.pow(2)]).is_err());
        assert!(RestrictionTarget::rational_curve(vec![u.mul(&v).unwrap(), v.pow(2), v.pow(2)]).is_err());
    }

    #[test]
    fn probe_examples() {
        let f5 = k(5);
        let smooth = FactoredDivisor::new(&f5, 3, vec![(conic(&f5), 1)]).unwrap();
        assert_eq!(singular_probe(&smooth, 2).unwrap(), SingularVerdict::NoSingularPointFound { m_max: 2 });
        assert_eq!(plane_curve_singularity(&smooth, 0).unwrap(), ExactVerdict::Smooth);

        let x = Form::variable(&f5, 3, 0);
        let y = Form::variable(&f5, 3, 1);
        let cross = FactoredDivisor::new(&f5, 3, vec![(x.clone(), 1), (y, 1)]).unwrap();
        let SingularVerdict::SingularAt(pt) = singular_probe(&cross, 1).unwrap() else { panic!() };
        assert_eq!(pt.to_string(), "[0:0:1]");
        let ExactVerdict::SingularAt(pt) = plane_curve_singularity(&cross, 0).unwrap() else { panic!() };
        assert_eq!(pt.to_string(), "[0:0:1]");

        let double = FactoredDivisor::new(&f5, 3, vec![(x, 2)]).unwrap();
        assert_eq!(singular_probe(&double, 2).unwrap(), SingularVerdict::NoSingularPointFound { m_max: 2 });
        assert_eq!(plane_curve_singularity(&double, 0).unwrap(), ExactVerdict::Smooth);
    }

    #[test]
    fn exact_path_finds_points_over_extensions() {
        let f3 = k(3);
        // x^2 + y^2 = (x - iy)(x + iy): two conjugate lines meeting at [0:0:1]
        let f = form(&f3, 3, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1)]);
        let d = FactoredDivisor::new(&f3, 3, vec![(f, 1)]).unwrap();
        let ExactVerdict::SingularAt(pt) = plane_curve_singularity(&d, 0).unwrap() else { panic!() };
        assert_eq!(pt.to_string(), "[0:0:1]");
        // nodal cubic y^2 z = x^3 + x^2 z, node at the origin
        let nodal = form(&f3, 3, &[(&[0, 2, 1], 1), (&[3, 0, 0], -1), (&[2, 0, 1], -1)]);
        let d = FactoredDivisor::new(&f3, 3, vec![(nodal, 1)]).unwrap();
        let ExactVerdict::SingularAt(pt) = plane_curve_singularity(&d, 0).unwrap() else { panic!() };
        assert_eq!(pt.to_string(), "[0:0:1]");
        // a cusp on the line at infinity: x^3 = y^2 z after swapping z and y
        let f5 = k(5);
        let cusp = form(&f5, 3, &[(&[3, 0, 0], 1), (&[0, 1, 2], -1)]);
        let d = FactoredDivisor::new(&f5, 3, vec![(cusp, 1)]).unwrap();
        let ExactVerdict::SingularAt(pt) = plane_curve_singularity(&d, 0).unwrap() else { panic!() };
        assert_eq!(pt.to_string(), "[0:1:0]");
    }

    #[test]
    fn exact_path_agrees_with_enumeration() {
        // brute force over F_{5^m} for all plane conics x^2 + a y^2 + b z^2 + c yz
        let f5 = k(5);
        for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    let f = form(&f5, 3, &[(&[2, 0, 0], 1), (&[0, 2, 0], a), (&[0, 0, 2], b), (&[0, 1, 1], c)]);
                    let d = FactoredDivisor::new(&f5, 3, vec![(f, 1)]).unwrap();
                    let exact = plane_curve_singularity(&d, 0).unwrap();
                    let probe = singular_probe(&d, 2).unwrap();
                    let smooth = matches!(probe, SingularVerdict::NoSingularPointFound { .. });
                    assert_eq!(exact == ExactVerdict::Smooth, smooth, "a={a} b={b} c={c}");
                }
            }
        }
    }

    #[test]
    fn cohomology_table() {
        assert_eq!(cohomology_dim(3, 2, 0).unwrap(), 10);
        assert_eq!(cohomology_dim(2, -4, 2).unwrap(), 3);
        for d in -10..=10 {
            assert_eq!(cohomology_dim(3, d, 1).unwrap(), 0);
        }
        assert!(cohomology_dim(2, 0, 3).is_err());
        for n in 0..=5u32 {
            for d in -20i64..=20 {
                for i in 0..=n {
                    let dual = cohomology_dim(n, -d - n as i64 - 1, n - i).unwrap();
                    assert_eq!(cohomology_dim(n, d, i).unwrap(), dual);
                }
            }
        }
    }

    #[test]
    fn vanishing_reports() {
        assert!(hi_vanishing_check(3, 2, -20, 20).unwrap().vanishes);
        assert!(hi_vanishing_check(2, 1, -20, 20).unwrap().vanishes);
        assert!(hi_vanishing_check(1, 1, -20, 20).is_err());
    }
}
