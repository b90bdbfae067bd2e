//! The three automaton models and their shared evaluation interface.

pub mod alphabet;
pub mod automaton;
pub mod channel;
pub mod embed;
pub mod gfa;
pub mod pfa;
pub mod qfa;
pub mod validate;

pub use alphabet::{Alphabet, Word};
pub use automaton::{accepts, accepts_with, Automaton};
pub use channel::{apply_channel, Channel};
pub use embed::pfa_as_qfa;
pub use gfa::{gfa_from_rows, Gfa};
pub use pfa::Pfa;
pub use qfa::Gqfa;
pub use validate::{Validate, ValidationReport, Violation, ViolationKind};

/// `f_G(w)`.
pub fn eval_gfa<S: crate::Scalar>(g: &Gfa<S>, word: &[usize]) -> crate::Result<S> {
    g.evaluate(word)
}

/// `f_P(w)`.
pub fn eval_pfa<S: crate::Scalar>(p: &Pfa<S>, word: &[usize]) -> crate::Result<S> {
    p.evaluate(word)
}

/// `f_Q(w)`.
pub fn eval_qfa(q: &Gqfa, word: &[usize]) -> crate::Result<f64> {
    q.evaluate(word)
}
