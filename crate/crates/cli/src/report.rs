use cutpoint_core::convert::{ConversionTrace, Degenerate};
use cutpoint_core::linalg::Matrix;
use cutpoint_core::scalar::format_rational;
use cutpoint_core::Rational;
use serde::Serialize;
use serde_json::{json, Value};

/// State counts for an `n`-state quantum machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub n: usize,
    /// `n²`, the linearized GFA.
    pub gfa_states: usize,
    /// `2n² + 6`, the constructed PFA.
    pub upper: usize,
    /// `n² − 1`, forced by the prepare–test witness.
    pub lower: usize,
}

pub fn bounds_row(n: usize) -> BoundsRow {
    BoundsRow {
        n,
        gfa_states: n * n,
        upper: 2 * n * n + 6,
        lower: n * n - 1,
    }
}

pub fn bounds_table(from: usize, to: usize) -> Vec<BoundsRow> {
    (from..=to).map(bounds_row).collect()
}

pub fn format_bounds(rows: &[BoundsRow]) -> String {
    let mut out = format!("{:>3}  {:>10}  {:>14}  {:>14}\n", "n", "GFA states", "PFA upper", "PFA lower");
    for r in rows {
        out.push_str(&format!("{:>3}  {:>10}  {:>14}  {:>14}\n", r.n, r.gfa_states, r.upper, r.lower));
    }
    out
}

fn q(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

fn qv(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

fn qm(m: &Matrix<Rational>) -> Value {
    Value::Array(m.row_vecs().iter().map(|r| qv(r)).collect())
}

fn qms(ms: &[Matrix<Rational>]) -> Value {
    Value::Array(ms.iter().map(qm).collect())
}

/// Every intermediate of a GFA→PFA conversion, rationals as `"p/q"`.
pub fn trace_json(t: &ConversionTrace) -> Value {
    let degenerate = t.degenerate.map(|d| match d {
        Degenerate::ZeroInitial => "zero_initial",
        Degenerate::ZeroReadout => "zero_readout",
    });
    json!({
        "shifted": {
            "initial": qv(&t.shifted.initial),
            "transitions": qms(&t.shifted.transitions),
            "final": qv(&t.shifted.fin),
        },
        "split": {
            "initial": qv(&t.split.initial),
            "transitions": qms(&t.split.transitions),
            "final": qv(&t.split.fin),
        },
        "zero_sum": qms(&t.zero_sum),
        "scale": q(&t.scale),
        "size": t.size,
        "s": q(&t.s),
        "g": t.g.as_deref().map(qv),
        "m_dec": t.m_dec.as_ref().map(q),
        "h": t.h.as_deref().map(qv),
        "initial": t.initial.as_deref().map(qv),
        "stochastic": qms(&t.stochastic),
        "degenerate": degenerate,
    })
}
