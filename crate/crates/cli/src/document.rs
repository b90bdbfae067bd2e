//! JSON machine documents.
//!
//! ```json
//! {
//!   "kind": "pfa",
//!   "scalar_mode": "rational",
//!   "alphabet": ["a", "b"],
//!   "cutpoint": "1/2",
//!   "payload": { "initial": [...], "transitions": [...], "end_marker": [...], "accepting": [0] }
//! }
//! ```
//!
//! Rational scalars are `"p/q"` strings, float scalars are JSON numbers and
//! complex entries are `[re, im]` pairs. Transition matrices are listed in
//! alphabet order. GQFA documents are always `float64`.

use std::fmt;
use std::path::Path;

use cutpoint_core::linalg::{ComplexMatrix, Matrix};
use cutpoint_core::models::{Alphabet, Automaton, Channel, Gfa, Gqfa, Pfa};
use cutpoint_core::scalar::{format_rational, parse_rational};
use cutpoint_core::{Rational, Scalar, ScalarMode};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocError {
    pub location: String,
    pub message: String,
}

impl DocError {
    fn at(location: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.location.is_empty() {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.location, self.message)
        }
    }
}

impl std::error::Error for DocError {}

type DocResult<T> = Result<T, DocError>;

#[derive(Debug, Clone)]
pub enum Machine {
    GfaRational(Gfa<Rational>),
    GfaFloat(Gfa<f64>),
    PfaRational(Pfa<Rational>),
    PfaFloat(Pfa<f64>),
    Gqfa(Gqfa),
}

impl Machine {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::GfaRational(_) | Self::GfaFloat(_) => "gfa",
            Self::PfaRational(_) | Self::PfaFloat(_) => "pfa",
            Self::Gqfa(_) => "gqfa",
        }
    }

    pub fn scalar_mode(&self) -> ScalarMode {
        match self {
            Self::GfaRational(_) | Self::PfaRational(_) => ScalarMode::Rational,
            _ => ScalarMode::Float64,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Self::GfaRational(m) => m.alphabet(),
            Self::GfaFloat(m) => m.alphabet(),
            Self::PfaRational(m) => m.alphabet(),
            Self::PfaFloat(m) => m.alphabet(),
            Self::Gqfa(m) => m.alphabet(),
        }
    }

    pub fn states(&self) -> usize {
        match self {
            Self::GfaRational(m) => m.state_count(),
            Self::GfaFloat(m) => m.state_count(),
            Self::PfaRational(m) => m.state_count(),
            Self::PfaFloat(m) => m.state_count(),
            Self::Gqfa(m) => m.state_count(),
        }
    }
}

/// Runs `$body` with `$m` bound to the concrete automaton inside a
/// [`Machine`].
#[macro_export]
macro_rules! with_machine {
    ($machine:expr, |$m:ident| $body:expr) => {
        match $machine {
            $crate::document::Machine::GfaRational($m) => $body,
            $crate::document::Machine::GfaFloat($m) => $body,
            $crate::document::Machine::PfaRational($m) => $body,
            $crate::document::Machine::PfaFloat($m) => $body,
            $crate::document::Machine::Gqfa($m) => $body,
        }
    };
}

trait DocScalar: Scalar {
    fn encode(&self) -> Value;
    fn decode(v: &Value, loc: &str) -> DocResult<Self>;
}

impl DocScalar for Rational {
    fn encode(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn decode(v: &Value, loc: &str) -> DocResult<Self> {
        match v {
            Value::String(s) => parse_rational(s).map_err(|e| DocError::at(loc, e.to_string())),
            Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
            other => Err(DocError::at(loc, format!("expected a \"p/q\" string, got {other}"))),
        }
    }
}

impl DocScalar for f64 {
    fn encode(&self) -> Value {
        json!(self)
    }

    fn decode(v: &Value, loc: &str) -> DocResult<Self> {
        v.as_f64()
            .ok_or_else(|| DocError::at(loc, format!("expected a number, got {v}")))
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, loc: &str) -> DocResult<&'a Value> {
    obj.get(key)
        .ok_or_else(|| DocError::at(loc, format!("missing field \"{key}\"")))
}

fn array<'a>(v: &'a Value, loc: &str) -> DocResult<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| DocError::at(loc, "expected an array"))
}

fn vector<S: DocScalar>(v: &Value, loc: &str) -> DocResult<Vec<S>> {
    array(v, loc)?
        .iter()
        .enumerate()
        .map(|(i, x)| S::decode(x, &format!("{loc}[{i}]")))
        .collect()
}

fn matrix<S: DocScalar>(v: &Value, loc: &str) -> DocResult<Matrix<S>> {
    let rows = array(v, loc)?
        .iter()
        .enumerate()
        .map(|(i, r)| vector::<S>(r, &format!("{loc}[{i}]")))
        .collect::<DocResult<Vec<_>>>()?;
    Matrix::from_rows(rows).map_err(|e| DocError::at(loc, e.to_string()))
}

fn matrices<S: DocScalar>(v: &Value, loc: &str) -> DocResult<Vec<Matrix<S>>> {
    array(v, loc)?
        .iter()
        .enumerate()
        .map(|(i, m)| matrix::<S>(m, &format!("{loc}[{i}]")))
        .collect()
}

fn complex(v: &Value, loc: &str) -> DocResult<Complex64> {
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => Ok(Complex64::new(f64::decode(re, loc)?, f64::decode(im, loc)?)),
        _ => Err(DocError::at(loc, format!("expected [re, im], got {v}"))),
    }
}

fn complex_matrix(v: &Value, loc: &str) -> DocResult<ComplexMatrix> {
    let rows = array(v, loc)?
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let rl = format!("{loc}[{i}]");
            array(r, &rl)?
                .iter()
                .enumerate()
                .map(|(j, z)| complex(z, &format!("{rl}[{j}]")))
                .collect::<DocResult<Vec<_>>>()
        })
        .collect::<DocResult<Vec<_>>>()?;
    Matrix::from_rows(rows).map_err(|e| DocError::at(loc, e.to_string()))
}

fn encode_vector<S: DocScalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(DocScalar::encode).collect())
}

fn encode_matrix<S: DocScalar>(m: &Matrix<S>) -> Value {
    Value::Array(m.row_vecs().iter().map(|r| encode_vector(r)).collect())
}

fn encode_complex_matrix(m: &ComplexMatrix) -> Value {
    Value::Array(
        m.row_vecs()
            .iter()
            .map(|r| Value::Array(r.iter().map(|z| json!([z.re, z.im])).collect()))
            .collect(),
    )
}

fn parse_gfa<S: DocScalar>(alphabet: Alphabet, cutpoint: &Value, p: &Map<String, Value>) -> DocResult<Gfa<S>> {
    let initial = vector(field(p, "initial", "payload")?, "payload.initial")?;
    let transitions = matrices(field(p, "transitions", "payload")?, "payload.transitions")?;
    let fin = vector(field(p, "final", "payload")?, "payload.final")?;
    let cutpoint = S::decode(cutpoint, "cutpoint")?;
    Gfa::new(alphabet, initial, transitions, fin, cutpoint).map_err(|e| DocError::at("payload", e.to_string()))
}

fn parse_pfa<S: DocScalar>(alphabet: Alphabet, cutpoint: &Value, p: &Map<String, Value>) -> DocResult<Pfa<S>> {
    let initial = vector(field(p, "initial", "payload")?, "payload.initial")?;
    let transitions = matrices(field(p, "transitions", "payload")?, "payload.transitions")?;
    let end = matrix(field(p, "end_marker", "payload")?, "payload.end_marker")?;
    let accepting = array(field(p, "accepting", "payload")?, "payload.accepting")?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| DocError::at(format!("payload.accepting[{i}]"), "expected a state index"))
        })
        .collect::<DocResult<Vec<_>>>()?;
    let cutpoint = S::decode(cutpoint, "cutpoint")?;
    Pfa::new(alphabet, initial, transitions, end, accepting, cutpoint)
        .map_err(|e| DocError::at("payload", e.to_string()))
}

fn parse_gqfa(alphabet: Alphabet, cutpoint: &Value, p: &Map<String, Value>) -> DocResult<Gqfa> {
    let rho0 = complex_matrix(field(p, "rho0", "payload")?, "payload.rho0")?;
    let channels = array(field(p, "channels", "payload")?, "payload.channels")?
        .iter()
        .enumerate()
        .map(|(i, ks)| {
            let loc = format!("payload.channels[{i}]");
            let kraus = array(ks, &loc)?
                .iter()
                .enumerate()
                .map(|(j, k)| complex_matrix(k, &format!("{loc}[{j}]")))
                .collect::<DocResult<Vec<_>>>()?;
            Channel::new(kraus).map_err(|e| DocError::at(loc, e.to_string()))
        })
        .collect::<DocResult<Vec<_>>>()?;
    let accept = complex_matrix(field(p, "accept", "payload")?, "payload.accept")?;
    let cutpoint = f64::decode(cutpoint, "cutpoint")?;
    Gqfa::new(alphabet, rho0, channels, accept, cutpoint).map_err(|e| DocError::at("payload", e.to_string()))
}

pub fn parse_document(text: &str) -> DocResult<Machine> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| DocError::at(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
    let obj = root.as_object().ok_or_else(|| DocError::at("", "document must be a JSON object"))?;
    let kind = field(obj, "kind", "document")?
        .as_str()
        .ok_or_else(|| DocError::at("kind", "expected a string"))?;
    let mode = field(obj, "scalar_mode", "document")?
        .as_str()
        .ok_or_else(|| DocError::at("scalar_mode", "expected a string"))?;
    let symbols: Vec<String> = array(field(obj, "alphabet", "document")?, "alphabet")?
        .iter()
        .enumerate()
        .map(|(i, s)| {
            s.as_str()
                .map(str::to_owned)
                .ok_or_else(|| DocError::at(format!("alphabet[{i}]"), "expected a string"))
        })
        .collect::<DocResult<_>>()?;
    let alphabet = Alphabet::new(symbols).map_err(|e| DocError::at("alphabet", e.to_string()))?;
    let cutpoint = field(obj, "cutpoint", "document")?;
    let payload = field(obj, "payload", "document")?
        .as_object()
        .ok_or_else(|| DocError::at("payload", "expected an object"))?;
    match (kind, mode) {
        ("gfa", "rational") => parse_gfa(alphabet, cutpoint, payload).map(Machine::GfaRational),
        ("gfa", "float64") => parse_gfa(alphabet, cutpoint, payload).map(Machine::GfaFloat),
        ("pfa", "rational") => parse_pfa(alphabet, cutpoint, payload).map(Machine::PfaRational),
        ("pfa", "float64") => parse_pfa(alphabet, cutpoint, payload).map(Machine::PfaFloat),
        ("gqfa", "float64") => parse_gqfa(alphabet, cutpoint, payload).map(Machine::Gqfa),
        ("gqfa", _) => Err(DocError::at("scalar_mode", "gqfa documents must be float64")),
        ("gfa" | "pfa", other) => Err(DocError::at("scalar_mode", format!("unknown scalar mode {other:?}"))),
        (other, _) => Err(DocError::at("kind", format!("unknown machine kind {other:?}"))),
    }
}

fn envelope(kind: &str, mode: ScalarMode, alphabet: &Alphabet, cutpoint: Value, payload: Value) -> Value {
    json!({
        "kind": kind,
        "scalar_mode": mode.name(),
        "alphabet": alphabet.symbols(),
        "cutpoint": cutpoint,
        "payload": payload,
    })
}

fn gfa_value<S: DocScalar>(g: &Gfa<S>) -> Value {
    envelope(
        "gfa",
        S::MODE,
        &g.alphabet,
        g.cutpoint.encode(),
        json!({
            "initial": encode_vector(&g.initial),
            "transitions": g.transitions.iter().map(encode_matrix).collect::<Vec<_>>(),
            "final": encode_vector(&g.fin),
        }),
    )
}

fn pfa_value<S: DocScalar>(p: &Pfa<S>) -> Value {
    envelope(
        "pfa",
        S::MODE,
        p.alphabet(),
        p.cutpoint().encode(),
        json!({
            "initial": encode_vector(p.initial()),
            "transitions": p.transitions().iter().map(encode_matrix).collect::<Vec<_>>(),
            "end_marker": encode_matrix(p.end_marker()),
            "accepting": p.accepting(),
        }),
    )
}

fn gqfa_value(q: &Gqfa) -> Value {
    let channels: Vec<Value> = q
        .channels
        .iter()
        .map(|c| Value::Array(c.kraus().iter().map(encode_complex_matrix).collect()))
        .collect();
    envelope(
        "gqfa",
        ScalarMode::Float64,
        &q.alphabet,
        json!(q.cutpoint),
        json!({
            "rho0": encode_complex_matrix(&q.rho0),
            "channels": channels,
            "accept": encode_complex_matrix(&q.accept),
        }),
    )
}

pub fn to_value(m: &Machine) -> Value {
    match m {
        Machine::GfaRational(g) => gfa_value(g),
        Machine::GfaFloat(g) => gfa_value(g),
        Machine::PfaRational(p) => pfa_value(p),
        Machine::PfaFloat(p) => pfa_value(p),
        Machine::Gqfa(q) => gqfa_value(q),
    }
}

pub fn serialize(m: &Machine) -> String {
    let mut text = serde_json::to_string_pretty(&to_value(m)).expect("JSON values always serialize");
    text.push('\n');
    text
}

pub fn read_machine(path: &Path) -> DocResult<Machine> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DocError::at(path.display().to_string(), e.to_string()))?;
    parse_document(&text).map_err(|e| DocError {
        location: if e.location.is_empty() {
            path.display().to_string()
        } else {
            format!("{}: {}", path.display(), e.location)
        },
        message: e.message,
    })
}

pub fn write_machine(path: &Path, m: &Machine) -> std::io::Result<()> {
    std::fs::write(path, serialize(m))
}
