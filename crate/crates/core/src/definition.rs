//! Sequence-definition files.
//!
//! ```json
//! { "name": "flf", "mode": "integer",
//!   "a": ["0","1","2","1"], "b": ["0","-8","-40","-24"], "c": ["-128","-128","128","128"],
//!   "initial": ["1","8"],
//!   "certificate": { "n0": 3, "h_num": ["16","0","-16","16"], "h_den": ["0","0","-1","1"],
//!                    "base_index": 3, "explicit_checks": [2, 3] } }
//! ```
//!
//! Coefficients are ascending decimal strings. Optional `description` and
//! `source` strings are carried through unchanged; other unknown keys are
//! ignored.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::certificate::{ConcavityCertificate, RationalFunction};
use crate::poly::{ExactRational, IntPolynomial};
use crate::recurrence::{RecurrenceError, ThreeTermRecurrence, ValueMode};

#[derive(Debug, Error)]
pub enum DefinitionError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error in field `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error("validation error: {0}")]
    Validation(String),
}

fn schema(field: impl Into<String>, message: impl Into<String>) -> DefinitionError {
    DefinitionError::Schema {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceDefinition {
    pub recurrence: ThreeTermRecurrence,
    pub certificate: Option<ConcavityCertificate>,
    pub description: Option<String>,
    pub source: Option<String>,
}

fn parse_json(text: &str) -> Result<Value, DefinitionError> {
    serde_json::from_str(text).map_err(|e| DefinitionError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn object<'a>(v: &'a Value, field: &str) -> Result<&'a Map<String, Value>, DefinitionError> {
    v.as_object().ok_or_else(|| schema(field, "expected an object"))
}

fn required<'a>(obj: &'a Map<String, Value>, prefix: &str, key: &str) -> Result<&'a Value, DefinitionError> {
    obj.get(key)
        .ok_or_else(|| schema(format!("{prefix}{key}"), "missing required field"))
}

fn string_list<'a>(v: &'a Value, field: &str) -> Result<Vec<&'a str>, DefinitionError> {
    let items = v
        .as_array()
        .ok_or_else(|| schema(field, "expected an array of decimal strings"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            item.as_str()
                .ok_or_else(|| schema(format!("{field}[{i}]"), "expected a decimal string"))
        })
        .collect()
}

fn polynomial(v: &Value, field: &str) -> Result<IntPolynomial, DefinitionError> {
    let items = string_list(v, field)?;
    let coeffs = items
        .iter()
        .enumerate()
        .map(|(i, s)| {
            s.trim()
                .parse::<BigInt>()
                .map_err(|_| schema(format!("{field}[{i}]"), format!("{s:?} is not an integer")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntPolynomial::new(coeffs))
}

fn rational_str(s: &str, field: &str) -> Result<ExactRational, DefinitionError> {
    let bad = || schema(field, format!("{s:?} is not an integer or p/q fraction"));
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(ExactRational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(ExactRational::new(p, q))
        }
    }
}

fn integer(v: &Value, field: &str) -> Result<i64, DefinitionError> {
    v.as_i64().ok_or_else(|| schema(field, "expected an integer"))
}

fn optional_string(obj: &Map<String, Value>, key: &str) -> Result<Option<String>, DefinitionError> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(_) => Err(schema(key, "expected a string")),
    }
}

fn certificate_from(v: &Value, sequence: &str, prefix: &str) -> Result<ConcavityCertificate, DefinitionError> {
    let obj = object(v, prefix.trim_end_matches('.'))?;
    let field = |k: &str| format!("{prefix}{k}");
    let n0 = integer(required(obj, prefix, "n0")?, &field("n0"))?;
    let num = polynomial(required(obj, prefix, "h_num")?, &field("h_num"))?;
    let den = polynomial(required(obj, prefix, "h_den")?, &field("h_den"))?;
    let base_index = integer(required(obj, prefix, "base_index")?, &field("base_index"))?;
    let explicit_checks = match obj.get("explicit_checks") {
        None => Vec::new(),
        Some(v) => v
            .as_array()
            .ok_or_else(|| schema(field("explicit_checks"), "expected an array of integers"))?
            .iter()
            .enumerate()
            .map(|(i, x)| integer(x, &format!("{}[{i}]", field("explicit_checks"))))
            .collect::<Result<_, _>>()?,
    };
    let h = RationalFunction::new(num, den)
        .map_err(|_| DefinitionError::Validation("certificate h_den is the zero polynomial".into()))?;
    if base_index < n0 {
        return Err(DefinitionError::Validation(format!(
            "certificate base_index {base_index} precedes n0 {n0}"
        )));
    }
    Ok(ConcavityCertificate {
        sequence: sequence.to_string(),
        n0,
        h,
        base_index,
        explicit_checks,
    })
}

/// Parses and validates a sequence definition from JSON text.
pub fn parse_sequence_spec(text: &str) -> Result<SequenceDefinition, DefinitionError> {
    let root = parse_json(text)?;
    let obj = object(&root, "<root>")?;
    let name = required(obj, "", "name")?
        .as_str()
        .ok_or_else(|| schema("name", "expected a string"))?
        .to_string();
    let mode = match required(obj, "", "mode")?.as_str() {
        Some("integer") => ValueMode::Integer,
        Some("rational") => ValueMode::Rational,
        _ => return Err(schema("mode", "expected \"integer\" or \"rational\"")),
    };
    let a = polynomial(required(obj, "", "a")?, "a")?;
    let b = polynomial(required(obj, "", "b")?, "b")?;
    let c = polynomial(required(obj, "", "c")?, "c")?;
    let initial = string_list(required(obj, "", "initial")?, "initial")?;
    if initial.len() != 2 {
        return Err(schema("initial", "expected exactly two initial terms"));
    }
    let s0 = rational_str(initial[0], "initial[0]")?;
    let s1 = rational_str(initial[1], "initial[1]")?;
    let recurrence = ThreeTermRecurrence::new(name.clone(), a, b, c, [s0, s1], mode).map_err(|e| {
        DefinitionError::Validation(match e {
            RecurrenceError::ZeroLeadingPolynomial => "a(n) is the zero polynomial".to_string(),
            other => other.to_string(),
        })
    })?;
    let certificate = match obj.get("certificate") {
        None | Some(Value::Null) => None,
        Some(v) => Some(certificate_from(v, &name, "certificate.")?),
    };
    Ok(SequenceDefinition {
        recurrence,
        certificate,
        description: optional_string(obj, "description")?,
        source: optional_string(obj, "source")?,
    })
}

fn read(path: &Path) -> Result<String, DefinitionError> {
    fs::read_to_string(path).map_err(|e| DefinitionError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load_sequence_spec(path: impl AsRef<Path>) -> Result<SequenceDefinition, DefinitionError> {
    parse_sequence_spec(&read(path.as_ref())?)
}

/// Reads a certificate either from a `"certificate"` block or from a bare
/// certificate object.
pub fn parse_certificate(text: &str, sequence: &str) -> Result<ConcavityCertificate, DefinitionError> {
    let root = parse_json(text)?;
    match root.get("certificate") {
        Some(block) => certificate_from(block, sequence, "certificate."),
        None => certificate_from(&root, sequence, ""),
    }
}

pub fn load_certificate(path: impl AsRef<Path>, sequence: &str) -> Result<ConcavityCertificate, DefinitionError> {
    parse_certificate(&read(path.as_ref())?, sequence)
}

#[derive(Serialize)]
struct CertificateFile<'a> {
    n0: i64,
    h_num: &'a IntPolynomial,
    h_den: &'a IntPolynomial,
    base_index: i64,
    explicit_checks: &'a [i64],
}

#[derive(Serialize)]
struct DefinitionFile<'a> {
    name: &'a str,
    mode: ValueMode,
    a: &'a IntPolynomial,
    b: &'a IntPolynomial,
    c: &'a IntPolynomial,
    initial: [String; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateFile<'a>>,
}

/// Serializes a definition in the file schema, pretty-printed.
pub fn to_json(rec: &ThreeTermRecurrence, cert: Option<&ConcavityCertificate>) -> String {
    let file = DefinitionFile {
        name: &rec.name,
        mode: rec.mode,
        a: &rec.a,
        b: &rec.b,
        c: &rec.c,
        initial: [rec.initial[0].to_string(), rec.initial[1].to_string()],
        certificate: cert.map(|c| CertificateFile {
            n0: c.n0,
            h_num: c.h.num(),
            h_den: c.h.den(),
            base_index: c.base_index,
            explicit_checks: &c.explicit_checks,
        }),
    };
    serde_json::to_string_pretty(&file).expect("definition serializes")
}
