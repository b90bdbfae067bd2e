use super::automaton::Automaton;
use super::channel::Channel;
use super::validate::{Validate, ValidationReport, ViolationKind};
use super::Alphabet;
use crate::error::Result;
use crate::linalg::complex::trace_product;
use crate::linalg::spectral::density_violation;
use crate::linalg::ComplexMatrix;
use crate::scalar::{Decision, Scalar};

/// Tolerance for the initial state and acceptance projector invariants.
pub const STATE_TOL: f64 = 1e-10;

/// Measure-once one-way quantum automaton on mixed states:
/// `f(w) = Tr(P_acc · E_{σm}(⋯E_{σ1}(ρ₀)))`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gqfa {
    pub alphabet: Alphabet,
    pub rho0: ComplexMatrix,
    pub channels: Vec<Channel>,
    pub accept: ComplexMatrix,
    pub cutpoint: f64,
}

impl Gqfa {
    pub fn new(
        alphabet: Alphabet,
        rho0: ComplexMatrix,
        channels: Vec<Channel>,
        accept: ComplexMatrix,
        cutpoint: f64,
    ) -> Result<Self> {
        let q = Self {
            alphabet,
            rho0,
            channels,
            accept,
            cutpoint,
        };
        q.validate().into_result()?;
        Ok(q)
    }

    pub fn dim(&self) -> usize {
        self.rho0.rows()
    }

    pub fn channel(&self, symbol: &str) -> Result<&Channel> {
        Ok(&self.channels[self.alphabet.index_of(symbol)?])
    }

    /// Final state `ρ_w`.
    pub fn state_after(&self, word: &[usize]) -> Result<ComplexMatrix> {
        self.alphabet.check_word(word)?;
        Ok(word.iter().fold(self.rho0.clone(), |rho, &s| self.step(&rho, s)))
    }
}

impl Automaton for Gqfa {
    type State = ComplexMatrix;
    type Value = f64;

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn start(&self) -> ComplexMatrix {
        self.rho0.clone()
    }

    fn step(&self, state: &ComplexMatrix, symbol: usize) -> ComplexMatrix {
        self.channels[symbol].apply(state).expect("validated dimensions")
    }

    fn finish(&self, state: &ComplexMatrix) -> f64 {
        trace_product(&self.accept, state).expect("validated dimensions").re
    }

    fn decide_with(&self, value: &f64, band: f64) -> Decision {
        f64::decide(value, &self.cutpoint, band)
    }

    fn to_f64(value: &f64) -> f64 {
        *value
    }

    fn cutpoint_f64(&self) -> f64 {
        self.cutpoint
    }

    fn state_count(&self) -> usize {
        self.dim()
    }
}

impl Validate for Gqfa {
    fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.rho0.rows();
        if let Some(why) = density_violation(&self.rho0, STATE_TOL) {
            report.push(ViolationKind::Density, format!("initial state: {why}"), 0.0);
        }
        if self.channels.len() != self.alphabet.len() {
            report.push(
                ViolationKind::Shape,
                format!("{} channels for {} symbols", self.channels.len(), self.alphabet.len()),
                0.0,
            );
        }
        for (i, ch) in self.channels.iter().enumerate() {
            let name = self.alphabet.symbols().get(i).map_or("?", String::as_str);
            if ch.dim() != n {
                report.push(
                    ViolationKind::Shape,
                    format!("symbol {name}: channel on C^{}, expected C^{n}", ch.dim()),
                    0.0,
                );
                continue;
            }
            ch.validate_into(&mut report, &format!("symbol {name}"));
        }
        if self.accept.dims() != (n, n) {
            report.push(ViolationKind::Shape, "acceptance projector shape", 0.0);
        } else {
            let herm = self.accept.hermitian_residual();
            let idem = self
                .accept
                .matmul(&self.accept)
                .and_then(|p2| p2.max_abs_diff(&self.accept))
                .unwrap_or(f64::INFINITY);
            let residual = herm.max(idem);
            if residual > STATE_TOL {
                report.push(ViolationKind::Projector, "acceptance projector", residual);
            }
        }
        if !(0.0..1.0).contains(&self.cutpoint) {
            report.push(
                ViolationKind::Cutpoint,
                format!("cutpoint {} outside [0, 1)", self.cutpoint),
                0.0,
            );
        }
        report
    }
}
