use super::automaton::Automaton;
use super::validate::{Validate, ValidationReport, ViolationKind};
use super::Alphabet;
use crate::error::Result;
use crate::linalg::{dot, Matrix};
use crate::scalar::{Decision, Rational, Scalar};

/// Row-sum tolerance for float PFAs. Rational PFAs must be exact.
pub const STOCHASTIC_TOL: f64 = 1e-12;

/// End-marker PFA: `f(w) = π·P_w·P_#·1_F`, strict cutpoint `μ ∈ [0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pfa<S> {
    alphabet: Alphabet,
    initial: Vec<S>,
    transitions: Vec<Matrix<S>>,
    end_marker: Matrix<S>,
    accepting: Vec<usize>,
    cutpoint: S,
    /// `P_#·1_F`, cached.
    decision: Vec<S>,
}

impl<S: Scalar> Pfa<S> {
    pub fn new(
        alphabet: Alphabet,
        initial: Vec<S>,
        transitions: Vec<Matrix<S>>,
        end_marker: Matrix<S>,
        accepting: Vec<usize>,
        cutpoint: S,
    ) -> Result<Self> {
        let pfa = Self::new_unchecked(alphabet, initial, transitions, end_marker, accepting, cutpoint);
        pfa.validate().into_result()?;
        Ok(pfa)
    }

    /// Builds without validation; [`Validate::validate`] reports any problems.
    /// Dimensions must still be consistent enough to form `P_#·1_F`.
    pub fn new_unchecked(
        alphabet: Alphabet,
        initial: Vec<S>,
        transitions: Vec<Matrix<S>>,
        end_marker: Matrix<S>,
        mut accepting: Vec<usize>,
        cutpoint: S,
    ) -> Self {
        accepting.sort_unstable();
        accepting.dedup();
        let decision = (0..end_marker.rows())
            .map(|i| {
                accepting
                    .iter()
                    .filter(|&&f| f < end_marker.cols())
                    .fold(S::zero(), |acc, &f| acc + end_marker[(i, f)].clone())
            })
            .collect();
        Self {
            alphabet,
            initial,
            transitions,
            end_marker,
            accepting,
            cutpoint,
            decision,
        }
    }

    pub fn states(&self) -> usize {
        self.initial.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> &[S] {
        &self.initial
    }

    pub fn transitions(&self) -> &[Matrix<S>] {
        &self.transitions
    }

    pub fn transition(&self, symbol: &str) -> Result<&Matrix<S>> {
        Ok(&self.transitions[self.alphabet.index_of(symbol)?])
    }

    pub fn end_marker(&self) -> &Matrix<S> {
        &self.end_marker
    }

    pub fn accepting(&self) -> &[usize] {
        &self.accepting
    }

    pub fn cutpoint(&self) -> &S {
        &self.cutpoint
    }

    /// `P_#·1_F`: acceptance probability from each state once `#` is read.
    pub fn decision_vector(&self) -> &[S] {
        &self.decision
    }

    pub fn into_parts(self) -> (Alphabet, Vec<S>, Vec<Matrix<S>>, Matrix<S>, Vec<usize>, S) {
        (
            self.alphabet,
            self.initial,
            self.transitions,
            self.end_marker,
            self.accepting,
            self.cutpoint,
        )
    }

    pub fn to_f64(&self) -> Pfa<f64> {
        Pfa::new_unchecked(
            self.alphabet.clone(),
            self.initial.iter().map(S::to_f64).collect(),
            self.transitions.iter().map(|m| m.map(S::to_f64)).collect(),
            self.end_marker.map(S::to_f64),
            self.accepting.clone(),
            self.cutpoint.to_f64(),
        )
    }

    pub fn to_rational(&self) -> Result<Pfa<Rational>> {
        Ok(Pfa::new_unchecked(
            self.alphabet.clone(),
            self.initial.iter().map(S::to_rational).collect::<Result<_>>()?,
            self.transitions
                .iter()
                .map(|m| m.try_map(S::to_rational))
                .collect::<Result<_>>()?,
            self.end_marker.try_map(S::to_rational)?,
            self.accepting.clone(),
            self.cutpoint.to_rational()?,
        ))
    }
}

impl<S: Scalar> Automaton for Pfa<S> {
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
        dot(state, &self.decision)
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

fn check_distribution<S: Scalar>(
    report: &mut ValidationReport,
    kind: ViolationKind,
    location: &str,
    entries: &[S],
) {
    if let Some((j, x)) = entries.iter().enumerate().find(|(_, x)| **x < S::zero()) {
        report.push(kind, format!("{location}, entry {j}: negative probability {x}"), x.to_f64().abs());
    }
    let sum = entries.iter().cloned().fold(S::zero(), |a, b| a + b);
    if !sum.near(&S::one(), STOCHASTIC_TOL) {
        report.push(
            kind,
            format!("{location}: sums to {sum}"),
            (sum.to_f64() - 1.0).abs(),
        );
    }
}

impl<S: Scalar> Validate for Pfa<S> {
    fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let m = self.initial.len();
        if m == 0 {
            report.push(ViolationKind::Shape, "no states", 0.0);
            return report;
        }
        check_distribution(&mut report, ViolationKind::Distribution, "initial distribution", &self.initial);
        if self.transitions.len() != self.alphabet.len() {
            report.push(
                ViolationKind::Shape,
                format!("{} transition matrices for {} symbols", self.transitions.len(), self.alphabet.len()),
                0.0,
            );
        }
        let named = self
            .transitions
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let name = self.alphabet.symbols().get(i).map_or("?", String::as_str);
                (format!("symbol {name}"), p)
            })
            .chain(std::iter::once(("end-marker #".to_string(), &self.end_marker)));
        for (name, p) in named {
            if p.dims() != (m, m) {
                report.push(
                    ViolationKind::Shape,
                    format!("{name}: matrix is {}x{}, expected {m}x{m}", p.rows(), p.cols()),
                    0.0,
                );
                continue;
            }
            for r in 0..m {
                check_distribution(&mut report, ViolationKind::Stochastic, &format!("{name}, row {r}"), p.row(r));
            }
        }
        if let Some(&f) = self.accepting.iter().find(|&&f| f >= m) {
            report.push(ViolationKind::AcceptingSet, format!("accepting state {f} out of range"), 0.0);
        }
        if self.cutpoint < S::zero() || self.cutpoint >= S::one() {
            report.push(
                ViolationKind::Cutpoint,
                format!("cutpoint {} outside [0, 1)", self.cutpoint),
                0.0,
            );
        }
        report
    }
}
