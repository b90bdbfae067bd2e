use super::automaton::Automaton;
use super::validate::{Validate, ValidationReport, ViolationKind};
use super::Alphabet;
use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix};
use crate::scalar::{Decision, Rational, Scalar};

/// Generalized finite automaton `f(w) = u·A_w·v` with strict cutpoint `λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gfa<S> {
    pub alphabet: Alphabet,
    pub initial: Vec<S>,
    pub transitions: Vec<Matrix<S>>,
    pub fin: Vec<S>,
    pub cutpoint: S,
}

impl<S: Scalar> Gfa<S> {
    pub fn new(
        alphabet: Alphabet,
        initial: Vec<S>,
        transitions: Vec<Matrix<S>>,
        fin: Vec<S>,
        cutpoint: S,
    ) -> Result<Self> {
        let gfa = Self {
            alphabet,
            initial,
            transitions,
            fin,
            cutpoint,
        };
        gfa.validate().into_result()?;
        Ok(gfa)
    }

    pub fn states(&self) -> usize {
        self.initial.len()
    }

    pub fn transition(&self, symbol: &str) -> Result<&Matrix<S>> {
        Ok(&self.transitions[self.alphabet.index_of(symbol)?])
    }

    /// Same machine with every entry mapped to the exact rational it denotes.
    pub fn to_rational(&self) -> Result<Gfa<Rational>> {
        Ok(Gfa {
            alphabet: self.alphabet.clone(),
            initial: self.initial.iter().map(S::to_rational).collect::<Result<_>>()?,
            transitions: self
                .transitions
                .iter()
                .map(|m| m.try_map(S::to_rational))
                .collect::<Result<_>>()?,
            fin: self.fin.iter().map(S::to_rational).collect::<Result<_>>()?,
            cutpoint: self.cutpoint.to_rational()?,
        })
    }

    pub fn to_f64(&self) -> Gfa<f64> {
        Gfa {
            alphabet: self.alphabet.clone(),
            initial: self.initial.iter().map(S::to_f64).collect(),
            transitions: self.transitions.iter().map(|m| m.map(S::to_f64)).collect(),
            fin: self.fin.iter().map(S::to_f64).collect(),
            cutpoint: self.cutpoint.to_f64(),
        }
    }
}

impl<S: Scalar> Automaton for Gfa<S> {
    type State = Vec<S>;
    type Value = S;

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn start(&self) -> Vec<S> {
        self.initial.clone()
    }

    fn step(&self, state: &Vec<S>, symbol: usize) -> Vec<S> {
        self.transitions[symbol]
            .left_mul(state)
            .expect("validated dimensions")
    }

    fn finish(&self, state: &Vec<S>) -> S {
        dot(state, &self.fin)
    }

    fn decide_with(&self, value: &S, band: f64) -> Decision {
        S::decide(value, &self.cutpoint, band)
    }

    fn to_f64(value: &S) -> f64 {
        value.to_f64()
    }

    fn cutpoint_f64(&self) -> f64 {
        self.cutpoint.to_f64()
    }

    fn state_count(&self) -> usize {
        self.states()
    }
}

impl<S: Scalar> Validate for Gfa<S> {
    fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let k = self.initial.len();
        if k == 0 {
            report.push(ViolationKind::Shape, "initial vector is empty", 0.0);
        }
        if self.fin.len() != k {
            report.push(
                ViolationKind::Shape,
                format!("final vector has length {}, expected {k}", self.fin.len()),
                0.0,
            );
        }
        if self.transitions.len() != self.alphabet.len() {
            report.push(
                ViolationKind::Shape,
                format!(
                    "{} transition matrices for {} symbols",
                    self.transitions.len(),
                    self.alphabet.len()
                ),
                0.0,
            );
        }
        for (i, m) in self.transitions.iter().enumerate() {
            if m.dims() != (k, k) {
                let name = self.alphabet.symbols().get(i).map_or("?", String::as_str);
                report.push(
                    ViolationKind::Shape,
                    format!("symbol {name}: matrix is {}x{}, expected {k}x{k}", m.rows(), m.cols()),
                    0.0,
                );
            }
        }
        let all = self
            .initial
            .iter()
            .chain(&self.fin)
            .chain(std::iter::once(&self.cutpoint))
            .chain(self.transitions.iter().flat_map(Matrix::iter));
        if all.into_iter().any(|x| !x.to_f64().is_finite() && S::MODE == crate::ScalarMode::Float64) {
            report.push(ViolationKind::NonFinite, "entries", f64::NAN);
        }
        report
    }
}

/// Convenience for tests and examples: a GFA over single-character symbols.
pub fn gfa_from_rows<S: Scalar>(
    symbols: &[&str],
    initial: Vec<S>,
    transitions: Vec<Vec<Vec<S>>>,
    fin: Vec<S>,
    cutpoint: S,
) -> Result<Gfa<S>> {
    let transitions = transitions
        .into_iter()
        .map(Matrix::from_rows)
        .collect::<Result<Vec<_>>>()?;
    if transitions.len() != symbols.len() {
        return Err(Error::Dimension("one matrix per symbol".into()));
    }
    Gfa::new(Alphabet::new(symbols.iter().copied())?, initial, transitions, fin, cutpoint)
}
