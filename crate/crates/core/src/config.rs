//! Run configuration: a flat `key = value` file, `#` starting a comment.
//!
//! ```text
//! p = 3
//! dim = 2
//! N = 2
//! section = x^2 - y*z
//! targets = y; @rational-hyperplanes
//! ```
//!
//! Keys: `p`, `field_degree`, `modulus` (coefficients, constant term first),
//! `dim`, `N`, `section`, `divisor` (`form : mult ; form : mult`), `lift`
//! (a lifted section `F + p*(G)` with `F = s`), `targets` (`;`-separated;
//! `@rational-hyperplanes` and `@frame-hyperplanes` expand to families),
//! `m_max`, `search_cap`, `output`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::cover::{CoverError, CoverSpec};
use crate::field::Field;
use crate::lifting::{frame_hyperplanes, rational_hyperplanes, LiftedForm, DEFAULT_SEARCH_CAP};
use crate::parse::{self, ParseError};
use crate::poly::{default_var_names, FactoredDivisor};
use crate::projective::RestrictionTarget;

const KEYS: &[&str] = &[
    "p", "field_degree", "modulus", "dim", "N", "section", "divisor", "lift", "targets", "m_max", "search_cap", "output",
];

/// Diagnostic tied to a line of the configuration (1-based; 0 when the
/// problem is a missing key).
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ConfigError {
    pub line: usize,
    /// Byte offset within the value, when a parser reported one.
    pub column: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (0, _) => write!(f, "config: {}", self.message),
            (l, Some(c)) => write!(f, "config line {l}, value byte {c}: {}", self.message),
            (l, None) => write!(f, "config line {l}: {}", self.message),
        }
    }
}

/// Failures while turning a configuration into a run; the split decides the
/// exit code.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Entry {
    value: String,
    line: usize,
}

/// The raw configuration, with source lines kept for diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    entries: BTreeMap<String, Entry>,
}

fn at(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError { line, column: None, message: message.into() }
}

fn from_parse(line: usize, e: ParseError) -> ConfigError {
    ConfigError { line, column: Some(e.offset), message: e.kind.to_string() }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(at(line, "expected `key = value`"));
            };
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(at(line, format!("unknown key `{key}`")));
            }
            let entry = Entry { value: value.trim().to_string(), line };
            if let Some(prev) = entries.insert(key.to_string(), entry) {
                return Err(at(line, format!("duplicate key `{key}` (first on line {})", prev.line)));
            }
        }
        Ok(Self { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|e| e.value.as_str())
    }

    fn line(&self, key: &str) -> usize {
        self.entries.get(key).map_or(0, |e| e.line)
    }

    fn required(&self, key: &str) -> Result<&Entry, ConfigError> {
        self.entries.get(key).ok_or_else(|| at(0, format!("missing key `{key}`")))
    }

    fn number<T: std::str::FromStr>(&self, key: &str, default: Option<T>) -> Result<T, ConfigError> {
        match self.entries.get(key) {
            Some(e) => e.value.parse().map_err(|_| at(e.line, format!("`{key}` must be a nonnegative integer"))),
            None => default.ok_or_else(|| at(0, format!("missing key `{key}`"))),
        }
    }

    pub fn field(&self) -> Result<Field, ConfigError> {
        let p: u64 = self.number("p", None)?;
        let degree: u32 = self.number("field_degree", Some(1))?;
        let modulus = match self.entries.get("modulus") {
            Some(e) => Some(parse::parse_modulus(&e.value).map_err(|err| from_parse(e.line, err))?),
            None => None,
        };
        Field::new(p, degree, modulus.as_deref()).map_err(|e| at(self.line("p").max(self.line("modulus")), e.to_string()))
    }

    pub fn dim(&self) -> Result<usize, ConfigError> {
        let n: usize = self.number("dim", None)?;
        if n == 0 {
            return Err(at(self.line("dim"), "`dim` must be at least 1"));
        }
        Ok(n)
    }

    pub fn m_max(&self) -> Result<u32, ConfigError> {
        self.number("m_max", Some(2))
    }

    pub fn search_cap(&self) -> Result<u64, ConfigError> {
        self.number("search_cap", Some(DEFAULT_SEARCH_CAP))
    }

    pub fn output(&self) -> Option<&str> {
        self.get("output")
    }

    /// Parses every key and builds the cover specification.
    pub fn build(&self, seed: u64) -> Result<Run, BuildError> {
        let field = self.field()?;
        let n = self.dim()?;
        let big_n: u64 = self.number("N", None)?;
        let names = default_var_names(n + 1);
        let sec = self.required("section")?;
        let section = parse::parse_form(&sec.value, &field, &names, None).map_err(|e| from_parse(sec.line, e))?;

        let divisor = match self.entries.get("divisor") {
            Some(e) => {
                let mut comps = Vec::new();
                for part in e.value.split(';').filter(|s| !s.trim().is_empty()) {
                    let (form, mult) = part.split_once(':').unwrap_or((part, "1"));
                    let m: u32 = mult.trim().parse().map_err(|_| at(e.line, "divisor multiplicity must be an integer"))?;
                    let f = parse::parse_form(form, &field, &names, None).map_err(|err| at(e.line, err.to_string()))?;
                    comps.push((f, m));
                }
                Some(FactoredDivisor::new(&field, n + 1, comps).map_err(|err| at(e.line, err.to_string()))?)
            }
            None => None,
        };

        let spec = CoverSpec::new(n, big_n, section, divisor, seed).map_err(|e| match e {
            CoverError::PrerequisiteFailed(m) => BuildError::Precondition(m),
            CoverError::DivisorMismatch(m) => BuildError::Config(at(self.line("divisor"), m)),
            other => BuildError::Config(at(sec.line, other.to_string())),
        })?;

        let lift = match self.entries.get("lift") {
            Some(e) => {
                let l = parse::parse_lifted(&e.value, &field, &names, Some(spec.section().degree()))
                    .map_err(|err| from_parse(e.line, err))?;
                if l.base() != spec.section() {
                    return Err(at(e.line, "lift does not reduce to the section").into());
                }
                Some(l)
            }
            None => None,
        };

        let mut targets = Vec::new();
        if let Some(e) = self.entries.get("targets") {
            for item in split_targets(&e.value) {
                match item.trim() {
                    "" => {}
                    "@rational-hyperplanes" => targets.extend(rational_hyperplanes(&field, n)),
                    "@frame-hyperplanes" => targets.extend(frame_hyperplanes(&field, n)),
                    t => targets.push(parse::parse_target(t, &field, n).map_err(|err| at(e.line, err.to_string()))?),
                }
            }
        }

        Ok(Run {
            field,
            spec,
            lift,
            targets,
            m_max: self.m_max()?,
            search_cap: self.search_cap()?,
        })
    }
}

/// Splits on `;` outside parentheses.
fn split_targets(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ';' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// A parsed, validated run.
#[derive(Clone, Debug)]
pub struct Run {
    pub field: Field,
    pub spec: CoverSpec,
    pub lift: Option<LiftedForm>,
    pub targets: Vec<RestrictionTarget>,
    pub m_max: u32,
    pub search_cap: u64,
}

impl Run {
    /// The configured lift of `s`, or its Teichmuller lift.
    pub fn section_lift(&self) -> LiftedForm {
        self.lift.clone().unwrap_or_else(|| LiftedForm::teichmuller(self.spec.section()))
    }

    pub fn names(&self) -> Vec<String> {
        default_var_names(self.spec.n() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CONIC: &str = "# conic over F_3\np = 3\ndim = 2\nN = 2\nsection = x^2 - y*z\ntargets = y; @rational-hyperplanes\n";

    #[test]
    fn conic_run() {
        let run = RunConfig::parse(CONIC).unwrap().build(0).unwrap();
        assert_eq!(run.spec.section().to_string(), "x^2 - y*z");
        assert_eq!(run.targets.len(), 14);
        assert_eq!(run.m_max, 2);
        assert_eq!(run.search_cap, DEFAULT_SEARCH_CAP);
        assert_eq!(run.section_lift(), LiftedForm::teichmuller(run.spec.section()));
    }

    #[test]
    fn diagnostics_carry_lines() {
        let e = RunConfig::parse("p = 3\nbogus = 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = RunConfig::parse("p = 3\ndim = 2\nN = 2\nsection = x^2 - y\n").unwrap().build(0).unwrap_err();
        assert!(matches!(e, BuildError::Config(ConfigError { line: 4, .. })), "{e:?}");
        let e = RunConfig::parse("p = 3\ndim = 2\nN = 2\nsection = x^2 + q\n").unwrap().build(0).unwrap_err();
        assert!(matches!(e, BuildError::Config(ConfigError { line: 4, column: Some(6), .. })), "{e:?}");
        let e = RunConfig::parse("p = 3\ndim = 2\n").unwrap().build(0).unwrap_err();
        assert!(e.to_string().contains("missing key `N`"));
    }

    #[test]
    fn degree_not_multiple_is_precondition() {
        let e = RunConfig::parse("p = 5\ndim = 2\nN = 2\nsection = x^3\n").unwrap().build(0).unwrap_err();
        assert!(matches!(e, BuildError::Precondition(_)));
    }

    #[test]
    fn divisor_and_lift_keys() {
        let text = "p = 5\ndim = 2\nN = 4\nsection = x^2*y^2\ndivisor = x : 2; y : 2\nlift = x^2*y^2 + p*(x^3*z)\ntargets = curve(u^2, u*v, v^2); (z = 0)\n";
        let run = RunConfig::parse(text).unwrap().build(0).unwrap();
        assert_eq!(run.spec.divisor().components().len(), 2);
        assert_eq!(run.lift.unwrap().correction().to_string(), "x^3*z");
        assert_eq!(run.targets.len(), 2);
        let bad = text.replace("p*(x^3*z)", "x*y^3 + p*(x^3*z)");
        assert!(RunConfig::parse(&bad).unwrap().build(0).is_err());
    }

    #[test]
    fn extension_field_with_modulus() {
        let run = RunConfig::parse("p = 3\nfield_degree = 2\nmodulus = 2, 2, 1\ndim = 1\nN = 2\nsection = x^2 - a*y^2\n")
            .unwrap()
            .build(0)
            .unwrap();
        assert_eq!(run.field.size(), 9);
        assert_eq!(run.field.modulus(), &[2, 2, 1]);
    }
}
