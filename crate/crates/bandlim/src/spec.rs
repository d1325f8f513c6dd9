//! The function-spec JSON format and builtin counterexample names.

use bandlim_core::counterexamples::{Family, FamilySpec, FAMILY_NAMES};
use bandlim_core::{Atom, PowerTail, RectAtom, Spectrum, TriangleAtom};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::CliError;

/// Serialized form of a spectrum: atoms and power-law tails.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SpecJson {
    #[serde(default)]
    pub atoms: Vec<AtomJson>,
    #[serde(default)]
    pub tails: Vec<TailJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AtomJson {
    Triangle {
        amp: f64,
        b: f64,
        c: f64,
        #[serde(default)]
        tau: f64,
    },
    Rect {
        amp: f64,
        w: f64,
        c: f64,
        #[serde(default)]
        tau: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailJson {
    pub gamma: f64,
    #[serde(default = "one")]
    pub amp: f64,
    #[serde(default = "one")]
    pub cutoff: f64,
}

fn one() -> f64 {
    1.0
}

impl SpecJson {
    pub fn from_spectrum(s: &Spectrum) -> Self {
        let atoms = s
            .atoms()
            .iter()
            .map(|a| match *a {
                Atom::Triangle(t) => AtomJson::Triangle { amp: t.amp, b: t.b, c: t.c, tau: t.tau },
                Atom::Rect(r) => AtomJson::Rect { amp: r.amp, w: r.w, c: r.c, tau: r.tau },
            })
            .collect();
        let tails = s.tails().iter().map(|t| TailJson { gamma: t.gamma, amp: t.amp, cutoff: t.cutoff }).collect();
        Self { atoms, tails }
    }
}

/// Parses and checks a spec, reporting every problem with its JSON path.
pub fn validate_spec(text: &str) -> Result<Spectrum, CliError> {
    let root: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(vec![format!("$: {e}")]))?;
    let mut errors = Vec::new();
    let mut atoms = Vec::new();
    let mut tails = Vec::new();
    match root.as_object() {
        None => errors.push("$: expected an object with `atoms` and `tails`".to_string()),
        Some(obj) => {
            for key in obj.keys().filter(|k| *k != "atoms" && *k != "tails") {
                errors.push(format!("$.{key}: unknown field"));
            }
            for (i, a) in array(obj, "atoms", &mut errors).iter().enumerate() {
                if let Some(atom) = parse_atom(a, &format!("$.atoms[{i}]"), &mut errors) {
                    atoms.push(atom);
                }
            }
            for (i, t) in array(obj, "tails", &mut errors).iter().enumerate() {
                if let Some(tail) = parse_tail(t, &format!("$.tails[{i}]"), &mut errors) {
                    tails.push(tail);
                }
            }
        }
    }
    if !errors.is_empty() {
        return Err(CliError::Parse(errors));
    }
    Spectrum::new(atoms, tails).map_err(|e| CliError::Parse(vec![format!("$: {e}")]))
}

fn array<'a>(obj: &'a Map<String, Value>, key: &str, errors: &mut Vec<String>) -> &'a [Value] {
    match obj.get(key) {
        None => &[],
        Some(Value::Array(v)) => v,
        Some(_) => {
            errors.push(format!("$.{key}: expected an array"));
            &[]
        }
    }
}

fn field(obj: &Map<String, Value>, path: &str, key: &str, default: Option<f64>, errors: &mut Vec<String>) -> Option<f64> {
    match obj.get(key) {
        None if default.is_some() => default,
        None => {
            errors.push(format!("{path}.{key}: missing"));
            None
        }
        Some(v) => match v.as_f64() {
            Some(x) if x.is_finite() => Some(x),
            _ => {
                errors.push(format!("{path}.{key}: expected a finite number"));
                None
            }
        },
    }
}

fn check_keys(obj: &Map<String, Value>, path: &str, allowed: &[&str], errors: &mut Vec<String>) {
    for key in obj.keys().filter(|k| !allowed.contains(&k.as_str())) {
        errors.push(format!("{path}.{key}: unknown field"));
    }
}

fn parse_atom(v: &Value, path: &str, errors: &mut Vec<String>) -> Option<Atom> {
    let Some(obj) = v.as_object() else {
        errors.push(format!("{path}: expected an object"));
        return None;
    };
    let kind = obj.get("kind").and_then(Value::as_str);
    let width_key = match kind {
        Some("triangle") => "b",
        Some("rect") => "w",
        _ => {
            errors.push(format!("{path}.kind: expected \"triangle\" or \"rect\""));
            return None;
        }
    };
    check_keys(obj, path, &["kind", "amp", width_key, "c", "tau"], errors);
    let before = errors.len();
    let amp = field(obj, path, "amp", None, errors);
    let width = field(obj, path, width_key, None, errors);
    let c = field(obj, path, "c", None, errors);
    let tau = field(obj, path, "tau", Some(0.0), errors);
    if let Some(w) = width {
        if w <= 0.0 {
            errors.push(format!("{path}.{width_key}: must be positive"));
        }
    }
    if errors.len() > before {
        return None;
    }
    let (amp, width, c, tau) = (amp?, width?, c?, tau?);
    Some(if width_key == "b" {
        Atom::Triangle(TriangleAtom { amp, b: width, c, tau })
    } else {
        Atom::Rect(RectAtom { amp, w: width, c, tau })
    })
}

fn parse_tail(v: &Value, path: &str, errors: &mut Vec<String>) -> Option<PowerTail> {
    let Some(obj) = v.as_object() else {
        errors.push(format!("{path}: expected an object"));
        return None;
    };
    check_keys(obj, path, &["gamma", "amp", "cutoff"], errors);
    let before = errors.len();
    let gamma = field(obj, path, "gamma", None, errors);
    let amp = field(obj, path, "amp", Some(1.0), errors);
    let cutoff = field(obj, path, "cutoff", Some(1.0), errors);
    if gamma.is_some_and(|g| g <= 0.5) {
        errors.push(format!("{path}.gamma: must exceed 1/2"));
    }
    if cutoff.is_some_and(|c| c <= 0.0) {
        errors.push(format!("{path}.cutoff: must be positive"));
    }
    if errors.len() > before {
        return None;
    }
    Some(PowerTail { gamma: gamma?, amp: amp?, cutoff: cutoff? })
}

/// Where a spectrum came from; builtin families keep their spec for bounds.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub spectrum: Spectrum,
    pub family: Option<FamilySpec>,
}

/// Names accepted after `builtin:`.
pub fn builtin_names() -> Vec<&'static str> {
    let mut names = vec!["sinc"];
    names.extend(FAMILY_NAMES);
    names
}

pub fn family_spec(name: &str, gamma: Option<f64>, delta: Option<f64>, trunc: Option<u64>) -> Result<FamilySpec, CliError> {
    if !FAMILY_NAMES.contains(&name) {
        return Err(CliError::UnknownBuiltin { name: name.to_string(), available: builtin_names().join(", ") });
    }
    let family = Family::from_name(name, gamma, delta).map_err(CliError::InvalidFamily)?;
    match trunc {
        Some(n) => FamilySpec::new(family, n),
        None => FamilySpec::with_default_terms(family),
    }
    .map_err(CliError::InvalidFamily)
}

/// Resolves `--f`: `builtin:<name>` or a path to a spec file.
pub fn load(f: &str, gamma: Option<f64>, delta: Option<f64>, trunc: Option<u64>) -> Result<Loaded, CliError> {
    if let Some(name) = f.strip_prefix("builtin:") {
        if name == "sinc" {
            return Ok(Loaded { spectrum: Spectrum::sinc(), family: None });
        }
        let spec = family_spec(name, gamma, delta, trunc)?;
        let spectrum = spec.build().map_err(CliError::InvalidFamily)?;
        return Ok(Loaded { spectrum, family: Some(spec) });
    }
    let text = std::fs::read_to_string(f).map_err(|e| CliError::Io(format!("{f}: {e}")))?;
    Ok(Loaded { spectrum: validate_spec(&text)?, family: None })
}
