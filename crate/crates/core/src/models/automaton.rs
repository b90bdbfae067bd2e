use super::Alphabet;
use crate::error::{Error, Result};
use crate::scalar::{Decision, BOUNDARY_TOL};

/// A word function driven one symbol at a time, plus a strict cutpoint.
///
/// Splitting evaluation into `start`/`step`/`finish` lets word enumeration
/// share work between words with a common prefix.
pub trait Automaton: Sync {
    type State: Clone + Send + Sync;
    type Value: Clone + Send + Sync;

    fn alphabet(&self) -> &Alphabet;

    fn start(&self) -> Self::State;

    /// Advance by one symbol. `symbol` must be a valid alphabet index.
    fn step(&self, state: &Self::State, symbol: usize) -> Self::State;

    fn finish(&self, state: &Self::State) -> Self::Value;

    /// Strict comparison against the cutpoint; float values within `band`
    /// of the cutpoint come back as [`Decision::Boundary`].
    fn decide_with(&self, value: &Self::Value, band: f64) -> Decision;

    fn to_f64(value: &Self::Value) -> f64;

    fn cutpoint_f64(&self) -> f64;

    fn state_count(&self) -> usize;

    fn decide(&self, value: &Self::Value) -> Decision {
        self.decide_with(value, BOUNDARY_TOL)
    }

    fn evaluate(&self, word: &[usize]) -> Result<Self::Value> {
        self.alphabet().check_word(word)?;
        let state = word
            .iter()
            .fold(self.start(), |state, &symbol| self.step(&state, symbol));
        Ok(self.finish(&state))
    }

    fn evaluate_symbols<S: AsRef<str>>(&self, symbols: &[S]) -> Result<Self::Value>
    where
        Self: Sized,
    {
        let word = self.alphabet().word(symbols)?;
        self.evaluate(&word)
    }
}

/// `f(w) > cutpoint`, refusing to decide inside the float boundary band.
pub fn accepts<A: Automaton + ?Sized>(machine: &A, word: &[usize]) -> Result<bool> {
    accepts_with(machine, word, BOUNDARY_TOL)
}

pub fn accepts_with<A: Automaton + ?Sized>(machine: &A, word: &[usize], band: f64) -> Result<bool> {
    let value = machine.evaluate(word)?;
    match machine.decide_with(&value, band) {
        Decision::Accept => Ok(true),
        Decision::Reject => Ok(false),
        Decision::Boundary { .. } => Err(Error::Boundary {
            value: A::to_f64(&value),
            cutpoint: machine.cutpoint_f64(),
            band,
        }),
    }
}
