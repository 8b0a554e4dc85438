//! Liftings over `W_2(F_q)`: lifted sections and targets, divisible
//! liftings, and the finite strong-liftability certificate.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::cover::{self, CoverError, CoverSpec};
use crate::field::{Field, Fq};
use crate::poly::{default_var_names, max_divisibility, mu_th_root_form, witt_mu_th_root, Form, PolyError};
use crate::projective::{self, hyperplane_chart, ProjError, RestrictionTarget};
use crate::witt::{Witt2, WittElement, WittError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("lifted hyperplane has no unit coefficient")]
    NonUnitPivot,
    #[error("restriction reduces to zero")]
    ZeroRestriction,
    #[error("N = {n} is divisible by the characteristic {p}")]
    NDivisibleByP { n: u64, p: u32 },
    #[error("precondition failed: {0}")]
    PrerequisiteFailed(String),
    #[error("base and correction must share ring, arity and degree")]
    MalformedLift,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Proj(#[from] ProjError),
    #[error(transparent)]
    Witt(#[from] WittError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

/// `tau(base) + p * correction`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedForm {
    base: Form<Field>,
    correction: Form<Field>,
}

impl LiftedForm {
    pub fn new(base: Form<Field>, correction: Form<Field>) -> Result<Self, LiftError> {
        if base.ring() != correction.ring() || base.num_vars() != correction.num_vars() {
            return Err(LiftError::MalformedLift);
        }
        if base.degree() != correction.degree() && !correction.is_zero() {
            return Err(LiftError::MalformedLift);
        }
        let correction = correction.with_degree(base.degree());
        Ok(Self { base, correction })
    }

    pub fn teichmuller(base: &Form<Field>) -> Self {
        let correction = Form::zero(base.ring(), base.num_vars(), base.degree());
        Self { base: base.clone(), correction }
    }

    pub fn from_witt(f: &Form<Witt2>) -> Self {
        let (base, correction) = f.split();
        Self { base, correction }
    }

    pub fn base(&self) -> &Form<Field> {
        &self.base
    }

    pub fn correction(&self) -> &Form<Field> {
        &self.correction
    }

    pub fn field(&self) -> &Field {
        self.base.ring()
    }

    pub fn witt_ring(&self) -> Witt2 {
        Witt2::new(self.field().clone())
    }

    pub fn to_witt(&self, w: &Witt2) -> Form<Witt2> {
        self.base.teichmuller(w).add(&self.correction.times_p(w)).expect("same shape")
    }

    /// `base + p*(correction)`, the syntax accepted by the parser.
    pub fn format_with(&self, names: &[String]) -> String {
        let base = self.base.format_with(names);
        if self.correction.is_zero() {
            base
        } else {
            format!("{base} + p*({})", self.correction.format_with(names))
        }
    }
}

impl fmt::Display for LiftedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&default_var_names(self.base.num_vars())))
    }
}

/// A lifting of a [`RestrictionTarget`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftedTarget {
    /// `tau(l) + p * m = 0`.
    Hyperplane(LiftedForm),
    RationalCurve(Vec<LiftedForm>),
}

impl LiftedTarget {
    pub fn teichmuller(target: &RestrictionTarget) -> Self {
        match target {
            RestrictionTarget::Hyperplane(l) => Self::Hyperplane(LiftedForm::teichmuller(l)),
            RestrictionTarget::RationalCurve(images) => {
                Self::RationalCurve(images.iter().map(LiftedForm::teichmuller).collect())
            }
        }
    }

    pub fn reduce(&self) -> Result<RestrictionTarget, ProjError> {
        match self {
            Self::Hyperplane(l) => RestrictionTarget::hyperplane(l.base.clone()),
            Self::RationalCurve(images) => {
                RestrictionTarget::rational_curve(images.iter().map(|g| g.base.clone()).collect())
            }
        }
    }

    fn witt_images(&self, w: &Witt2) -> Result<Vec<Form<Witt2>>, LiftError> {
        match self {
            Self::Hyperplane(l) => match hyperplane_chart(&l.to_witt(w)) {
                Ok((_, images)) => Ok(images),
                Err(ProjError::NonUnitPivot) => Err(LiftError::NonUnitPivot),
                Err(e) => Err(e.into()),
            },
            Self::RationalCurve(images) => {
                self.reduce()?;
                Ok(images.iter().map(|g| g.to_witt(w)).collect())
            }
        }
    }

    pub fn format_with(&self, names: &[String]) -> String {
        match self {
            Self::Hyperplane(l) => format!("({} = 0)", l.format_with(names)),
            Self::RationalCurve(images) => {
                let uv = vec!["u".to_string(), "v".to_string()];
                let parts: Vec<String> = images.iter().map(|g| g.format_with(&uv)).collect();
                format!("curve({})", parts.join(", "))
            }
        }
    }
}

impl fmt::Display for LiftedTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nv = match self {
            Self::Hyperplane(l) => l.base.num_vars(),
            Self::RationalCurve(images) => images.len(),
        };
        f.write_str(&self.format_with(&default_var_names(nv)))
    }
}

/// `s~|_E~` computed by substitution over `W_2`.
pub fn restrict_lift(s: &LiftedForm, target: &LiftedTarget) -> Result<LiftedForm, LiftError> {
    let w = s.witt_ring();
    let images = target.witt_images(&w)?;
    if images.len() != s.base.num_vars() {
        return Err(PolyError::ArityMismatch { expected: s.base.num_vars(), found: images.len() }.into());
    }
    let restricted = s.to_witt(&w).substitute(&images)?;
    let out = LiftedForm::from_witt(&restricted);
    if out.base.is_zero() {
        return Err(LiftError::ZeroRestriction);
    }
    Ok(out)
}

/// How a lifted root was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootMethod {
    /// `s~ = tau(t)^mu`.
    Teichmuller,
    /// `s~ = u~ tau(t)^mu` for a principal unit `u~`, fixed by `u~^(1/mu)`.
    UnitAdjusted,
    /// `tau(zeta t) + p w` with `w` solved by exact division.
    Corrected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedRoot {
    pub root: LiftedForm,
    pub method: RootMethod,
}

/// A verified `t~` with `t~^mu = s~`, if any.
pub fn lift_root(s: &LiftedForm, mu: u64) -> Result<Option<LiftedRoot>, LiftError> {
    let w = s.witt_ring();
    let target = s.to_witt(&w);
    let Some(t) = mu_th_root_form(&s.base, mu)? else {
        return Ok(None);
    };
    let verified = |root: Form<Witt2>, method| -> Option<LiftedRoot> {
        (root.pow(mu as u32) == target).then(|| LiftedRoot { root: LiftedForm::from_witt(&root), method })
    };
    if !t.is_zero() {
        let tau_t = t.teichmuller(&w);
        let tau_pow = tau_t.pow(mu as u32);
        let e = target.sub(&tau_pow)?.divide_by_p()?.with_degree(s.base.degree());
        if e.is_zero() {
            if let Some(r) = verified(tau_t, RootMethod::Teichmuller) {
                return Ok(Some(r));
            }
        } else if let Some(c) = e.divide_exact(&t.pow(mu as u32))? {
            if c.degree() == 0 {
                let unit = w.w_add(WittElement::ONE, w.times_p(c.coeff(&vec![0; c.num_vars()])));
                let v = w.principal_unit_root(unit, mu)?;
                if let Some(r) = verified(tau_t.scalar_mul(v), RootMethod::UnitAdjusted) {
                    return Ok(Some(r));
                }
            }
        }
    }
    Ok(witt_mu_th_root(&target, mu)?.and_then(|r| verified(r.root, RootMethod::Corrected)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuEntry {
    pub mu: u64,
    /// The reduction is a `mu`-th power, so a lifted root is demanded.
    pub required: bool,
    pub witness: Option<LiftedRoot>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityCertificate {
    pub entries: Vec<MuEntry>,
    pub divisible: bool,
}

impl DivisibilityCertificate {
    pub fn mu_required(&self) -> Vec<u64> {
        self.entries.iter().filter(|e| e.required).map(|e| e.mu).collect()
    }

    /// Witness for the largest required `mu`.
    pub fn top_witness(&self) -> Option<(u64, &LiftedRoot)> {
        self.entries.iter().rev().find_map(|e| e.witness.as_ref().map(|w| (e.mu, w)))
    }
}

fn check_n(field: &Field, n: u64) -> Result<(), LiftError> {
    if n == 0 || n % field.p() as u64 == 0 {
        return Err(LiftError::NDivisibleByP { n, p: field.p() });
    }
    Ok(())
}

/// Whether `s~_E` lifts every `mu`-th root of its reduction, `mu | N`.
pub fn is_divisible_lifting(s: &LiftedForm, n: u64) -> Result<DivisibilityCertificate, LiftError> {
    check_n(s.field(), n)?;
    let mut entries = Vec::new();
    for mu in arith::divisors(n) {
        let required = mu_th_root_form(&s.base, mu)?.is_some();
        let witness = if required { lift_root(s, mu)? } else { None };
        entries.push(MuEntry { mu, required, witness });
    }
    let divisible = entries.iter().all(|e| !e.required || e.witness.is_some());
    Ok(DivisibilityCertificate { entries, divisible })
}

/// Largest `mu | N` with `s~_E = t~^mu`: the number of components of the
/// lifted restricted cover.
pub fn lifted_component_count(s: &LiftedForm, n: u64) -> Result<u64, LiftError> {
    check_n(s.field(), n)?;
    let q = s.field().size() as u64;
    if (q - 1) % n != 0 {
        return Err(LiftError::PrerequisiteFailed(format!("N = {n} does not divide q - 1 = {}", q - 1)));
    }
    for mu in arith::divisors(n).into_iter().rev() {
        if lift_root(s, mu)?.is_some() {
            return Ok(mu);
        }
    }
    unreachable!("mu = 1 always lifts")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    TeichmullerOnly,
    /// Corrections `m` of a hyperplane, in lex order of coefficients, capped.
    HyperplaneFamily { limit: u64 },
}

pub const DEFAULT_SEARCH_CAP: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoundLift {
    pub target: LiftedTarget,
    pub restricted: LiftedForm,
    pub certificate: DivisibilityCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftSearch {
    pub found: Option<FoundLift>,
    /// Candidates examined, including the successful one.
    pub searched: u64,
}

/// The `idx`-th linear form in lex order of coefficient vectors.
fn linear_form_at(k: &Field, nv: usize, mut idx: u64) -> Form<Field> {
    let q = k.size() as u64;
    let mut m = Form::zero(k, nv, 1);
    for i in (0..nv).rev() {
        let c = k.from_raw((idx % q) as u32).expect("in range");
        idx /= q;
        let mut e = vec![0; nv];
        e[i] = 1;
        m.add_term(e, c);
    }
    m
}

/// Searches liftings `E~` of `E` on which `s~` restricts to a divisible
/// lifting; the first success in enumeration order wins.
pub fn construct_divisible_lift(
    s: &LiftedForm,
    n: u64,
    target: &RestrictionTarget,
    mode: SearchMode,
) -> Result<LiftSearch, LiftError> {
    check_n(s.field(), n)?;
    if projective::restrict(&s.base, target)?.is_zero() {
        return Err(CoverError::ContainedInBranchDivisor.into());
    }
    let try_candidate = |lifted: LiftedTarget| -> Result<Option<FoundLift>, LiftError> {
        let restricted = restrict_lift(s, &lifted)?;
        let certificate = is_divisible_lifting(&restricted, n)?;
        Ok(certificate.divisible.then_some(FoundLift { target: lifted, restricted, certificate }))
    };
    let (RestrictionTarget::Hyperplane(l), SearchMode::HyperplaneFamily { limit }) = (target, mode) else {
        let found = try_candidate(LiftedTarget::teichmuller(target))?;
        return Ok(LiftSearch { found, searched: 1 });
    };
    let k = s.field();
    let nv = l.num_vars();
    let total = (k.size() as u64).checked_pow(nv as u32).unwrap_or(u64::MAX).min(limit.max(1));
    let hit = (0..total).into_par_iter().find_map_first(|idx| {
        let m = linear_form_at(k, nv, idx);
        let lifted = LiftedTarget::Hyperplane(LiftedForm { base: l.clone(), correction: m });
        match try_candidate(lifted) {
            Ok(Some(found)) => Some(Ok((idx, found))),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        }
    });
    match hit {
        Some(Ok((idx, found))) => Ok(LiftSearch { found: Some(found), searched: idx + 1 }),
        Some(Err(e)) => Err(e),
        None => Ok(LiftSearch { found: None, searched: total }),
    }
}

/// One target of a strong-liftability probe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeEntry {
    pub target: String,
    pub branch_case: bool,
    pub mu_required: Vec<u64>,
    pub lifted_target: Option<String>,
    pub witness: Option<String>,
    pub lifted_components: Option<u64>,
    pub mu_max: Option<u64>,
    pub searched: u64,
    pub verdict: String,
}

pub const PROBE_SCOPE: &str =
    "hypotheses verified on the given finite family of prime divisors only; not a proof over all prime divisors";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub entries: Vec<ProbeEntry>,
    pub certified: usize,
    pub total: usize,
    pub all_certified: bool,
    pub scope: String,
}

/// Runs the divisible-lift search over a finite list of targets.
pub fn strong_liftability_probe(
    spec: &CoverSpec,
    lift: Option<&LiftedForm>,
    targets: &[RestrictionTarget],
    m_max: u32,
    search_cap: u64,
    seed: u64,
) -> Result<ProbeReport, LiftError> {
    let checklist = cover::validate(spec, m_max, seed);
    if !checklist.all_passed {
        let failed: Vec<String> = checklist.failed().iter().map(|c| c.name.clone()).collect();
        return Err(LiftError::PrerequisiteFailed(failed.join(", ")));
    }
    let s = match lift {
        Some(l) if l.base() == spec.section() => l.clone(),
        Some(_) => return Err(LiftError::PrerequisiteFailed("lifting does not reduce to s".into())),
        None => LiftedForm::teichmuller(spec.section()),
    };
    let names = default_var_names(spec.n() + 1);
    let n = spec.big_n();
    let mut entries = Vec::with_capacity(targets.len());
    for target in targets {
        let label = target.to_string();
        let restricted = projective::restrict(spec.section(), target)?;
        if restricted.is_zero() {
            entries.push(ProbeEntry {
                target: label,
                branch_case: true,
                mu_required: vec![],
                lifted_target: None,
                witness: None,
                lifted_components: None,
                mu_max: None,
                searched: 0,
                verdict: "branch".into(),
            });
            continue;
        }
        let mu_max = max_divisibility(&restricted, n)?.mu;
        let search = construct_divisible_lift(&s, n, target, SearchMode::HyperplaneFamily { limit: search_cap })?;
        let target_names = target.target_var_names(&names);
        let entry = match search.found {
            Some(found) => {
                let components = lifted_component_count(&found.restricted, n)?;
                let consistent = components == mu_max;
                ProbeEntry {
                    target: label,
                    branch_case: false,
                    mu_required: found.certificate.mu_required(),
                    lifted_target: Some(found.target.format_with(&names)),
                    witness: found.certificate.top_witness().map(|(_, w)| w.root.format_with(&target_names)),
                    lifted_components: Some(components),
                    mu_max: Some(mu_max),
                    searched: search.searched,
                    verdict: if consistent { "certified" } else { "inconsistent" }.into(),
                }
            }
            None => ProbeEntry {
                target: label,
                branch_case: false,
                mu_required: vec![],
                lifted_target: None,
                witness: None,
                lifted_components: None,
                mu_max: Some(mu_max),
                searched: search.searched,
                verdict: "not-found".into(),
            },
        };
        entries.push(entry);
    }
    let certified = entries.iter().filter(|e| e.verdict == "certified" || e.verdict == "branch").count();
    Ok(ProbeReport {
        total: entries.len(),
        all_certified: certified == entries.len(),
        certified,
        entries,
        scope: PROBE_SCOPE.into(),
    })
}

/// The `q^2 + q + 1` lines of `P^2(F_q)`, or all `F_q`-rational hyperplanes
/// of `P^n`, each given by its monic equation.
pub fn rational_hyperplanes(k: &Field, n: usize) -> Vec<RestrictionTarget> {
    let nv = n + 1;
    let q = k.size() as u64;
    (1..q.pow(nv as u32))
        .map(|idx| linear_form_at(k, nv, idx))
        .filter(|l| l.lead_coeff() == Some(Fq::ONE))
        .map(|l| RestrictionTarget::hyperplane(l).expect("nonzero linear form"))
        .collect()
}

/// Hyperplanes `sum_{i in S} x_i = 0` for nonempty `S`.
pub fn frame_hyperplanes(k: &Field, n: usize) -> Vec<RestrictionTarget> {
    let nv = n + 1;
    (1u64..(1 << nv))
        .map(|mask| {
            let mut l = Form::zero(k, nv, 1);
            for i in 0..nv {
                if mask >> i & 1 == 1 {
                    let mut e = vec![0; nv];
                    e[i] = 1;
                    l.add_term(e, Fq::ONE);
                }
            }
            RestrictionTarget::hyperplane(l).expect("nonzero linear form")
        })
        .collect()
}
