//! Cyclic covers `Y -> P^n` obtained by extracting an `N`-th root of a
//! section `s` of `O(aN)`, analyzed through their numerical data.

use num_rational::Rational64;
use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::field::{Field, FieldError, Fq};
use crate::poly::{binary_factor, floor_div, max_divisibility, mu_th_root_form, FactoredDivisor, Form, PolyError};
use crate::projective::{
    self, cohomology_dim, plane_curve_singularity, singular_probe, ExactVerdict, ProjError, RestrictionTarget,
    SingularVerdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("precondition failed: {0}")]
    PrerequisiteFailed(String),
    #[error("target lies in the support of the branch divisor")]
    ContainedInBranchDivisor,
    #[error("branch divisor is not reduced")]
    NonReducedBranch,
    #[error("divisor does not cut out the section: {0}")]
    DivisorMismatch(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Proj(#[from] ProjError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Where the factored branch divisor came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DivisorSource {
    Supplied,
    /// Factored exactly (binary forms).
    Factored,
    /// `s = r^m` with `m` maximal; `r` is treated as one component.
    Inferred,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSpec {
    field: Field,
    n: usize,
    big_n: u64,
    a: u32,
    section: Form<Field>,
    divisor: FactoredDivisor,
    divisor_source: DivisorSource,
}

impl CoverSpec {
    /// `s` must be a nonzero form of degree `a * N` on `P^n`. Without a
    /// supplied divisor, binary forms are factored and higher-dimensional
    /// sections get an inferred one.
    pub fn new(
        n: usize,
        big_n: u64,
        section: Form<Field>,
        divisor: Option<FactoredDivisor>,
        seed: u64,
    ) -> Result<Self, CoverError> {
        let field = section.ring().clone();
        if big_n == 0 {
            return Err(CoverError::PrerequisiteFailed("N must be positive".into()));
        }
        if section.num_vars() != n + 1 {
            return Err(PolyError::ArityMismatch { expected: n + 1, found: section.num_vars() }.into());
        }
        if section.is_zero() {
            return Err(PolyError::ZeroPolynomial.into());
        }
        if section.degree() as u64 % big_n != 0 {
            return Err(CoverError::PrerequisiteFailed(format!(
                "deg(s) = {} is not a multiple of N = {big_n}",
                section.degree()
            )));
        }
        let a = (section.degree() as u64 / big_n) as u32;
        let (divisor, divisor_source) = match divisor {
            Some(d) => {
                if !d.product().is_associate(&section) {
                    return Err(CoverError::DivisorMismatch("product of components differs from s".into()));
                }
                (d, DivisorSource::Supplied)
            }
            None if n == 1 => {
                let fac = binary_factor(&section, seed)?;
                (FactoredDivisor::new(&field, 2, fac.factors)?, DivisorSource::Factored)
            }
            None => (infer_divisor(&section)?, DivisorSource::Inferred),
        };
        Ok(Self { field, n, big_n, a, section, divisor, divisor_source })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Dimension of the ambient `P^n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn big_n(&self) -> u64 {
        self.big_n
    }

    /// `L = O(a)`.
    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn section(&self) -> &Form<Field> {
        &self.section
    }

    pub fn divisor(&self) -> &FactoredDivisor {
        &self.divisor
    }

    pub fn divisor_source(&self) -> DivisorSource {
        self.divisor_source
    }

    pub fn gcd_ok(&self) -> bool {
        self.big_n % self.field.p() as u64 != 0
    }

    pub fn roots_rational(&self) -> bool {
        (self.field.size() as u64 - 1) % self.big_n == 0
    }

    fn require_counting(&self) -> Result<(), CoverError> {
        if !self.gcd_ok() {
            return Err(CoverError::PrerequisiteFailed(format!("gcd(N,p) ≠ 1 (N = {}, p = {})", self.big_n, self.field.p())));
        }
        if !self.roots_rational() {
            return Err(CoverError::PrerequisiteFailed(format!(
                "N = {} does not divide q - 1 = {}",
                self.big_n,
                self.field.size() - 1
            )));
        }
        Ok(())
    }
}

/// `g` with `f = g^p`: over a perfect field, exactly when every exponent is
/// divisible by `p`.
fn pth_root(f: &Form<Field>) -> Option<Form<Field>> {
    let k = f.ring();
    let p = k.p();
    if f.degree() == 0 || f.terms().any(|(e, _)| e.iter().any(|x| x % p != 0)) {
        return None;
    }
    let terms = f.terms().map(|(e, c)| (e.iter().map(|x| x / p).collect(), k.frobenius_inv(*c)));
    Form::from_terms(k, f.num_vars(), f.degree() / p, terms).ok()
}

/// `{(r, m)}` with `s = c * r^m` and `m` as large as possible.
fn infer_divisor(s: &Form<Field>) -> Result<FactoredDivisor, CoverError> {
    let k = s.ring();
    // scalars are irrelevant to the divisor
    let mut base = s.monic();
    let mut p_part = 1u64;
    while let Some(g) = pth_root(&base) {
        base = g;
        p_part *= k.p() as u64;
    }
    let best = arith::divisors(base.degree().max(1) as u64)
        .into_iter()
        .rev()
        .filter(|m| m % k.p() as u64 != 0)
        .find_map(|m| mu_th_root_form(&base, m).ok().flatten().map(|r| (r, m)))
        .unwrap_or_else(|| (base.clone(), 1));
    Ok(FactoredDivisor::new(k, s.num_vars(), vec![(best.0, (best.1 * p_part) as u32)])?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// `exact` or `bounded`.
    pub certificate: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Checklist {
    pub checks: Vec<Check>,
    pub all_passed: bool,
}

impl Checklist {
    pub fn failed(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const CHECK_GCD: &str = "gcd(N,p) = 1";
pub const CHECK_DEGREE: &str = "deg(s) = a*N";
pub const CHECK_H1: &str = "h^1(P^n, O(aN)) = 0";
pub const CHECK_SMOOTH: &str = "Sing(D_red) empty";
pub const CHECK_ROOTS: &str = "N | q-1";

/// Checks the hypotheses of the cover construction. Failures are entries in
/// the checklist, never errors.
pub fn validate(spec: &CoverSpec, m_max: u32, seed: u64) -> Checklist {
    let check = |name: &str, passed: bool, certificate: &str, detail: String| Check {
        name: name.into(),
        passed,
        certificate: certificate.into(),
        detail,
    };
    let mut checks = vec![
        check(CHECK_GCD, spec.gcd_ok(), "exact", format!("N = {}, p = {}", spec.big_n, spec.field.p())),
        check(
            CHECK_DEGREE,
            spec.section.degree() as u64 == spec.a as u64 * spec.big_n,
            "exact",
            format!("deg(s) = {}, a = {}", spec.section.degree(), spec.a),
        ),
    ];
    let d = (spec.a as u64 * spec.big_n) as i64;
    let h1 = if spec.n >= 1 { cohomology_dim(spec.n as u32, d, 1).unwrap_or(0) } else { 0 };
    checks.push(check(CHECK_H1, h1 == 0, "exact", format!("h^1 = {h1}")));
    checks.push(smoothness_check(spec, m_max, seed));
    checks.push(check(
        CHECK_ROOTS,
        spec.roots_rational(),
        "exact",
        format!("q - 1 = {}", spec.field.size() - 1),
    ));
    let all_passed = checks.iter().all(|c| c.passed);
    Checklist { checks, all_passed }
}

fn smoothness_check(spec: &CoverSpec, m_max: u32, seed: u64) -> Check {
    let mk = |passed: bool, certificate: &str, detail: String| Check {
        name: CHECK_SMOOTH.into(),
        passed,
        certificate: certificate.into(),
        detail,
    };
    let d = &spec.divisor;
    if spec.n == 1 {
        return mk(true, "exact", "reduced divisors on P^1 are smooth".into());
    }
    if spec.n == 2 {
        match plane_curve_singularity(d, seed) {
            Ok(ExactVerdict::Smooth) => return mk(true, "exact", "resultant elimination found no singular point".into()),
            Ok(ExactVerdict::SingularAt(pt)) => return mk(false, "exact", format!("singular at {pt}")),
            Ok(ExactVerdict::SingularOverExtension { degree }) => {
                return mk(false, "exact", format!("singular point over an extension of degree {degree}"))
            }
            Ok(ExactVerdict::Inconclusive(_)) | Err(_) => {}
        }
    }
    match singular_probe(d, m_max) {
        Ok(SingularVerdict::SingularAt(pt)) => mk(false, "bounded", format!("singular at {pt}")),
        Ok(SingularVerdict::NoSingularPointFound { m_max }) => {
            mk(true, "bounded", format!("no singular point over F_(q^m), m <= {m_max}"))
        }
        Err(e) => mk(false, "bounded", e.to_string()),
    }
}

/// `nu = mu_max(s, N)`, the number of irreducible components of `Y`.
pub fn component_count(spec: &CoverSpec) -> Result<u64, CoverError> {
    spec.require_counting()?;
    Ok(max_divisibility(&spec.section, spec.big_n)?.mu)
}

/// `Y -> Y_1 -> X`: an unramified stage of degree `mu` with branches labelled
/// by the `mu`-th roots of unity, then the `N/mu`-th root of `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverFactorization {
    pub mu: u64,
    pub t: Form<Field>,
    pub branch_labels: Vec<Fq>,
    pub root_stage_degree: u64,
    /// `D_1` with `D = mu * D_1`.
    pub d1: FactoredDivisor,
}

pub fn factor_cover(spec: &CoverSpec) -> Result<CoverFactorization, CoverError> {
    spec.require_counting()?;
    let div = max_divisibility(&spec.section, spec.big_n)?;
    let mu = div.mu;
    let components = spec
        .divisor
        .components()
        .iter()
        .map(|(f, m)| {
            if *m as u64 % mu != 0 {
                return Err(CoverError::DivisorMismatch(format!(
                    "multiplicity {m} of a component is not divisible by mu = {mu}"
                )));
            }
            Ok((f.clone(), m / mu as u32))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let d1 = FactoredDivisor::new(&spec.field, spec.n + 1, components)?;
    Ok(CoverFactorization {
        mu,
        t: div.witness,
        branch_labels: spec.field.roots_of_unity(mu),
        root_stage_degree: spec.big_n / mu,
        d1,
    })
}

/// `deg L^{-i}([iD/N])` on `X` for `0 <= i < N`.
pub fn summand_degrees(spec: &CoverSpec) -> Vec<i64> {
    let n = spec.big_n as i64;
    (0..n)
        .map(|i| {
            let floors: i64 = spec
                .divisor
                .components()
                .iter()
                .map(|(f, m)| floor_div(i * *m as i64, n) * f.degree() as i64)
                .sum();
            -i * spec.a as i64 + floors
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionReport {
    pub restriction: Form<Field>,
    pub mu_max: u64,
    pub witness: Form<Field>,
    /// Irreducible components of `Spec B`, the cyclic cover of `E`.
    pub spec_b_components: u64,
    /// `D|_E` as (point, multiplicity, degree), when `E` is a line or curve.
    pub points: Option<Vec<(Form<Field>, u32, u32)>>,
    pub b_degrees: Option<Vec<i64>>,
    pub a_e_degrees: Vec<i64>,
    pub b_dominates_a: Option<bool>,
}

/// Compares the cyclic cover of `E` with the restriction of `Y` to `E`.
pub fn restrict_cover(spec: &CoverSpec, target: &RestrictionTarget, seed: u64) -> Result<RestrictionReport, CoverError> {
    if !spec.gcd_ok() {
        return Err(CoverError::PrerequisiteFailed(format!("gcd(N,p) ≠ 1 (N = {}, p = {})", spec.big_n, spec.field.p())));
    }
    let restriction = projective::restrict(&spec.section, target)?;
    if restriction.is_zero() {
        return Err(CoverError::ContainedInBranchDivisor);
    }
    let div = max_divisibility(&restriction, spec.big_n)?;
    let n = spec.big_n as i64;
    let e = target.pullback_degree() as i64;
    let a = spec.a as i64;

    let a_e_degrees: Vec<i64> = (0..n)
        .map(|i| {
            let floors: i64 = spec
                .divisor
                .components()
                .iter()
                .map(|(f, m)| floor_div(i * *m as i64, n) * f.degree() as i64 * e)
                .sum();
            -i * a * e + floors
        })
        .collect();

    let points = if target.is_p1() {
        let fac = binary_factor(&restriction, seed)?;
        Some(fac.factors.into_iter().map(|(f, m)| { let d = f.degree(); (f, m, d) }).collect::<Vec<_>>())
    } else {
        None
    };
    let b_degrees = points.as_ref().map(|pts| {
        (0..n)
            .map(|i| -i * a * e + pts.iter().map(|(_, m, d)| floor_div(i * *m as i64, n) * *d as i64).sum::<i64>())
            .collect::<Vec<i64>>()
    });
    let b_dominates_a = b_degrees.as_ref().map(|b| b.iter().zip(&a_e_degrees).all(|(x, y)| x >= y));
    Ok(RestrictionReport {
        restriction,
        mu_max: div.mu,
        witness: div.witness,
        spec_b_components: div.mu,
        points,
        b_degrees,
        a_e_degrees,
        b_dominates_a,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalReport {
    /// Degree of `K_X + (N-1)/N D`, whose pullback is `K_Y`.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub degree: Rational64,
    pub ample: bool,
    pub general_type: bool,
}

/// `-(n+1) + (N-1) a` for `D` reduced of degree `aN`.
pub fn canonical_degree(n: u32, big_n: u64, a: Rational64) -> CanonicalReport {
    let degree = Rational64::from_integer(-(n as i64 + 1)) + Rational64::from_integer(big_n as i64 - 1) * a;
    let ample = degree > Rational64::from_integer(0);
    CanonicalReport { degree, ample, general_type: ample }
}

pub fn canonical_report(spec: &CoverSpec) -> Result<CanonicalReport, CoverError> {
    if !spec.divisor.is_reduced() {
        return Err(CoverError::NonReducedBranch);
    }
    let a = Rational64::new(spec.divisor.degree() as i64, spec.big_n as i64);
    Ok(canonical_degree(spec.n as u32, spec.big_n, a))
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
    fn conic_cover_validates() {
        let f3 = k(3);
        let spec = CoverSpec::new(2, 2, conic(&f3), None, 0).unwrap();
        assert_eq!(spec.divisor_source(), DivisorSource::Inferred);
        let v = validate(&spec, 2, 0);
        assert!(v.all_passed, "{v:?}");
        assert_eq!(v.find(CHECK_SMOOTH).unwrap().certificate, "exact");
        assert_eq!(component_count(&spec).unwrap(), 1);
        assert_eq!(summand_degrees(&spec), vec![0, -1]);
    }

    #[test]
    fn validation_failures() {
        let f3 = k(3);
        let x = Form::variable(&f3, 3, 0);
        let y = Form::variable(&f3, 3, 1);
        let spec = CoverSpec::new(2, 3, x.pow(3), None, 0).unwrap();
        let v = validate(&spec, 1, 0);
        assert!(!v.find(CHECK_GCD).unwrap().passed);
        assert!(matches!(component_count(&spec), Err(CoverError::PrerequisiteFailed(_))));

        let d = FactoredDivisor::new(&f3, 3, vec![(x.clone(), 1), (y.clone(), 1)]).unwrap();
        let spec = CoverSpec::new(2, 2, x.mul(&y).unwrap(), Some(d), 0).unwrap();
        let v = validate(&spec, 1, 0);
        let smooth = v.find(CHECK_SMOOTH).unwrap();
        assert!(!smooth.passed);
        assert!(smooth.detail.contains("[0:0:1]"));
    }

    #[test]
    fn divisible_sections() {
        let f5 = k(5);
        let q = conic(&f5);
        let spec = CoverSpec::new(2, 4, q.pow(2), None, 0).unwrap();
        assert_eq!(spec.divisor().components()[0].1, 2);
        assert_eq!(component_count(&spec).unwrap(), 2);
        let fac = factor_cover(&spec).unwrap();
        assert_eq!(fac.mu, 2);
        assert_eq!(fac.t, q);
        assert_eq!(fac.root_stage_degree, 2);
        assert_eq!(fac.branch_labels, vec![f5.one(), f5.from_int(4)]);

        let x = Form::variable(&f5, 3, 0);
        let y = Form::variable(&f5, 3, 1);
        let t = x.add(&y).unwrap();
        let spec = CoverSpec::new(2, 2, t.pow(2), None, 0).unwrap();
        let fac = factor_cover(&spec).unwrap();
        assert_eq!((fac.mu, fac.root_stage_degree), (2, 1));
        assert_eq!(fac.d1.components(), &[(t, 1)]);
    }

    #[test]
    fn restriction_to_tangent_line() {
        let f3 = k(3);
        let spec = CoverSpec::new(2, 2, conic(&f3), None, 0).unwrap();
        let e = RestrictionTarget::hyperplane(Form::variable(&f3, 3, 1)).unwrap();
        let r = restrict_cover(&spec, &e, 0).unwrap();
        assert_eq!(r.restriction, form(&f3, 2, &[(&[2, 0], 1)]));
        assert_eq!(r.mu_max, 2);
        assert_eq!(r.witness, Form::variable(&f3, 2, 0));
        assert_eq!(r.spec_b_components, 2);
        assert_eq!(r.b_degrees, Some(vec![0, 0]));
        assert_eq!(r.a_e_degrees, vec![0, -1]);

        let e = RestrictionTarget::hyperplane(Form::variable(&f3, 3, 0)).unwrap();
        let r = restrict_cover(&spec, &e, 0).unwrap();
        assert_eq!(r.mu_max, 1);
        assert_eq!(r.b_degrees, Some(r.a_e_degrees.clone()));
    }

    #[test]
    fn branch_target_is_rejected() {
        let f3 = k(3);
        let y = Form::variable(&f3, 3, 1);
        let s = y.mul(&form(&f3, 3, &[(&[1, 0, 0], 1), (&[0, 0, 1], 1)])).unwrap();
        let spec = CoverSpec::new(2, 2, s, None, 0).unwrap();
        let e = RestrictionTarget::hyperplane(y).unwrap();
        assert_eq!(restrict_cover(&spec, &e, 0), Err(CoverError::ContainedInBranchDivisor));
    }

    #[test]
    fn canonical_degrees() {
        let r = canonical_degree(3, 7, Rational64::from_integer(1));
        assert_eq!(r.degree, Rational64::from_integer(2));
        assert!(r.general_type);
        assert!(!canonical_degree(3, 5, Rational64::from_integer(1)).general_type);
        assert_eq!(canonical_degree(2, 4, Rational64::from_integer(2)).degree, Rational64::from_integer(3));
        for a in 1..=5 {
            let d0 = canonical_degree(3, 6, Rational64::from_integer(a)).degree;
            let d1 = canonical_degree(3, 6, Rational64::from_integer(a + 1)).degree;
            assert_eq!(d1 - d0, Rational64::from_integer(5));
        }
        let f5 = k(5);
        let spec = CoverSpec::new(2, 4, conic(&f5).pow(2), None, 0).unwrap();
        assert_eq!(canonical_report(&spec), Err(CoverError::NonReducedBranch));
    }

    #[test]
    fn binary_sections_are_factored() {
        let f5 = k(5);
        let x = Form::variable(&f5, 2, 0);
        let z = Form::variable(&f5, 2, 1);
        let s = x.pow(2).mul(&z.pow(2)).unwrap();
        let spec = CoverSpec::new(1, 2, s, None, 0).unwrap();
        assert_eq!(spec.divisor_source(), DivisorSource::Factored);
        assert_eq!(spec.divisor().components().len(), 2);
        assert_eq!(component_count(&spec).unwrap(), 2);
    }

    #[test]
    fn inferred_divisor_sees_p_th_powers() {
        let k = k(3);
        let x = Form::variable(&k, 3, 0);
        let conic = x.pow(2).sub(&Form::variable(&k, 3, 1).mul(&Form::variable(&k, 3, 2)).unwrap()).unwrap();
        let spec = CoverSpec::new(2, 2, conic.pow(6), None, 0).unwrap();
        assert_eq!(spec.divisor().components(), &[(conic, 6)]);
        let spec = CoverSpec::new(2, 9, x.pow(9), None, 0).unwrap();
        assert_eq!(spec.divisor().components(), &[(x, 9)]);
    }
}
