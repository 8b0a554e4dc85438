//! Serializable reports shared by the CLI and the C interface.
//!
//! Every report starts with `"schema"` and `"command"`; fields serialize in
//! declaration order and carry no timestamps, so identical inputs give
//! byte-identical JSON.

use num_rational::Rational64;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::config::{BuildError, Run, RunConfig};
use crate::cover::{self, CanonicalReport, Checklist, CoverError, CHECK_GCD};
use crate::field::{Field, FieldError};
use crate::lifting::{self, LiftError, LiftedRoot, ProbeReport, RootMethod, SearchMode};
use crate::parse;
use crate::poly::Form;
use crate::witt::Witt2;

pub const SCHEMA: &str = "cyclift-report/1";

/// Integers as JSON numbers, other rationals as `"p/q"` strings.
pub fn ser_rational<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    if r.is_integer() {
        s.serialize_i64(r.to_integer())
    } else {
        s.serialize_str(&r.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RunError {
    /// Unreadable input: exit code 2.
    #[error("{0}")]
    Config(String),
    /// A hypothesis of the requested analysis fails: exit code 3.
    #[error("{0}")]
    Precondition(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Precondition(_) => 3,
        }
    }
}

impl From<BuildError> for RunError {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::Config(c) => RunError::Config(c.to_string()),
            BuildError::Precondition(m) => RunError::Precondition(m),
        }
    }
}

impl From<CoverError> for RunError {
    fn from(e: CoverError) -> Self {
        RunError::Precondition(e.to_string())
    }
}

impl From<LiftError> for RunError {
    fn from(e: LiftError) -> Self {
        RunError::Precondition(e.to_string())
    }
}

fn gcd_precondition(run: &Run) -> Result<(), RunError> {
    if run.spec.gcd_ok() {
        Ok(())
    } else {
        Err(RunError::Precondition(format!(
            "check `{CHECK_GCD}` failed: gcd(N,p) ≠ 1 (N = {}, p = {})",
            run.spec.big_n(),
            run.field.p()
        )))
    }
}

/// Loads and builds a configuration from its text.
pub fn load(config_text: &str, seed: u64) -> Result<Run, RunError> {
    let cfg = RunConfig::parse(config_text).map_err(|e| RunError::Config(e.to_string()))?;
    Ok(cfg.build(seed)?)
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    serde_json::to_string(report).expect("reports serialize")
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentJson {
    pub form: String,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationJson {
    pub mu: u64,
    pub t: String,
    pub branch_labels: Vec<String>,
    pub root_stage_degree: u64,
    pub d1: Vec<ComponentJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub field: String,
    pub n: usize,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub a: u32,
    pub section: String,
    pub divisor: Vec<ComponentJson>,
    pub divisor_source: cover::DivisorSource,
    pub checklist: Checklist,
    pub component_count: Option<u64>,
    pub factorization: Option<FactorizationJson>,
    pub summand_degrees: Vec<i64>,
    pub canonical: Option<CanonicalReport>,
    pub notes: Vec<String>,
}

fn components(names: &[String], comps: &[(Form<Field>, u32)]) -> Vec<ComponentJson> {
    comps.iter().map(|(f, m)| ComponentJson { form: f.format_with(names), multiplicity: *m }).collect()
}

/// `cover analyze`: hypotheses, component count, factorization of the cover
/// and the canonical-degree report.
pub fn run_analyze(run: &Run, seed: u64) -> Result<AnalyzeReport, RunError> {
    gcd_precondition(run)?;
    let spec = &run.spec;
    let names = run.names();
    let k = &run.field;
    let checklist = cover::validate(spec, run.m_max, seed);
    let mut notes = Vec::new();
    let component_count = cover::component_count(spec).map_err(|e| notes.push(format!("component count: {e}"))).ok();
    let factorization = cover::factor_cover(spec)
        .map(|f| FactorizationJson {
            mu: f.mu,
            t: f.t.format_with(&names),
            branch_labels: f.branch_labels.iter().map(|z| k.format(*z)).collect(),
            root_stage_degree: f.root_stage_degree,
            d1: components(&names, f.d1.components()),
        })
        .map_err(|e| notes.push(format!("factorization: {e}")))
        .ok();
    let canonical = cover::canonical_report(spec).map_err(|e| notes.push(format!("canonical report: {e}"))).ok();
    Ok(AnalyzeReport {
        schema: SCHEMA,
        command: "cover analyze",
        field: k.descriptor(),
        n: spec.n(),
        big_n: spec.big_n(),
        a: spec.a(),
        section: spec.section().format_with(&names),
        divisor: components(&names, spec.divisor().components()),
        divisor_source: spec.divisor_source(),
        checklist,
        component_count,
        factorization,
        summand_degrees: cover::summand_degrees(spec),
        canonical,
        notes,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PointJson {
    pub form: String,
    pub multiplicity: u32,
    pub degree: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub target: String,
    pub restriction: String,
    pub mu_max: u64,
    pub witness: String,
    pub spec_b_components: u64,
    pub points: Option<Vec<PointJson>>,
    #[serde(rename = "B_degrees")]
    pub b_degrees: Option<Vec<i64>>,
    #[serde(rename = "A_E_degrees")]
    pub a_e_degrees: Vec<i64>,
    pub b_dominates_a: Option<bool>,
}

/// `cover restrict`: the cyclic cover of `E` against `Y` restricted to `E`.
pub fn run_restrict(run: &Run, target_text: &str, seed: u64) -> Result<RestrictReport, RunError> {
    gcd_precondition(run)?;
    let target = parse::parse_target(target_text, &run.field, run.spec.n()).map_err(|e| RunError::Config(format!("target: {e}")))?;
    let r = cover::restrict_cover(&run.spec, &target, seed)?;
    let tnames = target.target_var_names(&run.names());
    Ok(RestrictReport {
        schema: SCHEMA,
        command: "cover restrict",
        target: target.to_string(),
        restriction: r.restriction.format_with(&tnames),
        mu_max: r.mu_max,
        witness: r.witness.format_with(&tnames),
        spec_b_components: r.spec_b_components,
        points: r.points.map(|pts| {
            pts.into_iter().map(|(f, m, d)| PointJson { form: f.format_with(&tnames), multiplicity: m, degree: d }).collect()
        }),
        b_degrees: r.b_degrees,
        a_e_degrees: r.a_e_degrees,
        b_dominates_a: r.b_dominates_a,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MuEntryJson {
    pub mu: u64,
    pub required: bool,
    pub witness: Option<String>,
    pub method: Option<RootMethod>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftCheckReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub target: String,
    pub lifted_target: String,
    pub section_lift: String,
    pub restricted_lift: String,
    pub mu_required: Vec<u64>,
    pub entries: Vec<MuEntryJson>,
    pub lifted_components: u64,
    pub divisible: bool,
}

fn witness_json(w: Option<&LiftedRoot>, names: &[String]) -> (Option<String>, Option<RootMethod>) {
    (w.map(|r| r.root.format_with(names)), w.map(|r| r.method))
}

/// `lift check`: is the restriction of the configured lift to the given
/// lifted target a divisible lifting, and how many components it has.
pub fn run_lift_check(run: &Run, target_text: &str, lift_text: &str) -> Result<LiftCheckReport, RunError> {
    gcd_precondition(run)?;
    let k = &run.field;
    let n = run.spec.n();
    let target = parse::parse_target(target_text, k, n).map_err(|e| RunError::Config(format!("target: {e}")))?;
    let lifted = parse::parse_lifted_target(lift_text, k, n).map_err(|e| RunError::Config(format!("lift: {e}")))?;
    let reduced = lifted.reduce().map_err(|e| RunError::Config(format!("lift: {e}")))?;
    if reduced != target {
        return Err(RunError::Config(format!("lift: {lifted} does not reduce to {target}")));
    }
    let names = run.names();
    let tnames = target.target_var_names(&names);
    let s = run.section_lift();
    let restricted = lifting::restrict_lift(&s, &lifted)?;
    if restricted.base().is_zero() {
        return Err(CoverError::ContainedInBranchDivisor.into());
    }
    let big_n = run.spec.big_n();
    let cert = lifting::is_divisible_lifting(&restricted, big_n)?;
    let lifted_components = lifting::lifted_component_count(&restricted, big_n)?;
    Ok(LiftCheckReport {
        schema: SCHEMA,
        command: "lift check",
        target: target.to_string(),
        lifted_target: lifted.format_with(&names),
        section_lift: s.format_with(&names),
        restricted_lift: restricted.format_with(&tnames),
        mu_required: cert.mu_required(),
        entries: cert
            .entries
            .iter()
            .map(|e| {
                let (witness, method) = witness_json(e.witness.as_ref(), &tnames);
                MuEntryJson { mu: e.mu, required: e.required, witness, method }
            })
            .collect(),
        lifted_components,
        divisible: cert.divisible,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftSearchReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub target: String,
    pub section_lift: String,
    pub found: bool,
    pub lifted_target: Option<String>,
    pub restricted_lift: Option<String>,
    pub witness: Option<String>,
    pub method: Option<RootMethod>,
    pub lifted_components: Option<u64>,
    pub searched: u64,
    pub search_cap: u64,
}

/// `lift search`: the first lifting of the target on which the configured
/// lift restricts divisibly.
pub fn run_lift_search(run: &Run, target_text: &str) -> Result<LiftSearchReport, RunError> {
    gcd_precondition(run)?;
    let target = parse::parse_target(target_text, &run.field, run.spec.n()).map_err(|e| RunError::Config(format!("target: {e}")))?;
    let names = run.names();
    let tnames = target.target_var_names(&names);
    let s = run.section_lift();
    let big_n = run.spec.big_n();
    let search = lifting::construct_divisible_lift(&s, big_n, &target, SearchMode::HyperplaneFamily { limit: run.search_cap })?;
    let (mut lifted_target, mut restricted_lift, mut witness, mut method, mut lifted_components) = (None, None, None, None, None);
    if let Some(found) = &search.found {
        lifted_target = Some(found.target.format_with(&names));
        restricted_lift = Some(found.restricted.format_with(&tnames));
        (witness, method) = witness_json(found.certificate.top_witness().map(|(_, w)| w), &tnames);
        lifted_components = Some(lifting::lifted_component_count(&found.restricted, big_n)?);
    }
    Ok(LiftSearchReport {
        schema: SCHEMA,
        command: "lift search",
        target: target.to_string(),
        section_lift: s.format_with(&names),
        found: search.found.is_some(),
        lifted_target,
        restricted_lift,
        witness,
        method,
        lifted_components,
        searched: search.searched,
        search_cap: run.search_cap,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeRunReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub section_lift: String,
    pub m_max: u32,
    pub search_cap: u64,
    #[serde(flatten)]
    pub probe: ProbeReport,
}

/// `lift probe`: divisible-lift search over every configured target.
pub fn run_probe(run: &Run, seed: u64) -> Result<ProbeRunReport, RunError> {
    gcd_precondition(run)?;
    if run.targets.is_empty() {
        return Err(RunError::Config("config: `targets` is empty".into()));
    }
    let s = run.section_lift();
    let probe = lifting::strong_liftability_probe(&run.spec, Some(&s), &run.targets, run.m_max, run.search_cap, seed)?;
    Ok(ProbeRunReport {
        schema: SCHEMA,
        command: "lift probe",
        section_lift: s.format_with(&run.names()),
        m_max: run.m_max,
        search_cap: run.search_cap,
        probe,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WittEvalReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub field: String,
    pub expr: String,
    /// Witt coordinates `(a0; a1)`.
    pub value: String,
    /// Image in `Z/p^2`, for prime fields.
    pub zp2: Option<u64>,
}

fn make_field(p: u64, n: u32, modulus: Option<&str>) -> Result<Field, RunError> {
    let m = match modulus {
        Some(t) => Some(parse::parse_modulus(t).map_err(|e| RunError::Config(format!("modulus: {e}")))?),
        None => None,
    };
    Field::new(p, n, m.as_deref()).map_err(|e: FieldError| RunError::Config(e.to_string()))
}

pub fn run_witt_eval(expr: &str, p: u64, n: u32, modulus: Option<&str>) -> Result<WittEvalReport, RunError> {
    let k = make_field(p, n, modulus)?;
    let w = Witt2::new(k.clone());
    let v = parse::parse_witt(expr, &w).map_err(|e| RunError::Config(e.to_string()))?;
    Ok(WittEvalReport {
        schema: SCHEMA,
        command: "witt eval",
        field: k.descriptor(),
        expr: expr.to_string(),
        value: w.format(v),
        zp2: w.iso_zp2(v).ok(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldInfoReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub p: u32,
    pub n: u32,
    pub q: u32,
    /// Coefficients of the defining polynomial, constant term first.
    pub modulus: Vec<u32>,
    pub generator: String,
    pub generator_order: u64,
}

pub fn run_field_info(p: u64, n: u32, modulus: Option<&str>) -> Result<FieldInfoReport, RunError> {
    let k = make_field(p, n, modulus)?;
    let g = k.generator();
    Ok(FieldInfoReport {
        schema: SCHEMA,
        command: "field info",
        p: k.p(),
        n: k.degree(),
        q: k.size(),
        modulus: k.modulus().to_vec(),
        generator: k.format(g),
        generator_order: k.order(g).map_err(|e| RunError::Config(e.to_string()))?,
    })
}
