use crate::error::{Error, Result};
use crate::models::{Automaton, Word};
use crate::scalar::Decision;

use super::words::values_for;

#[derive(Debug, Clone, PartialEq)]
pub struct Disagreement {
    pub word: Word,
    pub value_a: f64,
    pub value_b: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryFlag {
    pub word: Word,
    /// `'A'` or `'B'`.
    pub machine: char,
    pub value: f64,
    pub distance: f64,
}

/// Outcome of comparing two machines' cutpoint decisions word by word.
/// Words where either side is boundary-ambiguous are flagged, not decided.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AgreementReport {
    pub words_checked: usize,
    pub disagreements: Vec<Disagreement>,
    pub boundary_flags: Vec<BoundaryFlag>,
}

impl AgreementReport {
    pub fn agree(&self) -> bool {
        self.disagreements.is_empty()
    }

    pub fn clean(&self) -> bool {
        self.disagreements.is_empty() && self.boundary_flags.is_empty()
    }

    fn record<A: Automaton, B: Automaton>(
        &mut self,
        a: &A,
        b: &B,
        word: &[usize],
        va: &A::Value,
        vb: &B::Value,
        band: f64,
    ) {
        self.words_checked += 1;
        let da = a.decide_with(va, band);
        let db = b.decide_with(vb, band);
        let (fa, fb) = (A::to_f64(va), B::to_f64(vb));
        for (machine, d, value) in [('A', da, fa), ('B', db, fb)] {
            if let Decision::Boundary { distance } = d {
                self.boundary_flags.push(BoundaryFlag {
                    word: word.to_vec(),
                    machine,
                    value,
                    distance,
                });
            }
        }
        if let (Some(x), Some(y)) = (da.accepted(), db.accepted()) {
            if x != y {
                self.disagreements.push(Disagreement {
                    word: word.to_vec(),
                    value_a: fa,
                    value_b: fb,
                });
            }
        }
    }
}

fn same_alphabet<A: Automaton, B: Automaton>(a: &A, b: &B) -> Result<()> {
    if a.alphabet().symbols() != b.alphabet().symbols() {
        return Err(Error::AlphabetMismatch(
            a.alphabet().symbols().to_vec(),
            b.alphabet().symbols().to_vec(),
        ));
    }
    Ok(())
}

/// Compares `accepts(A, w)` with `accepts(B, w)` on every word up to `max_len`.
pub fn check_agreement<A: Automaton, B: Automaton>(
    a: &A,
    b: &B,
    max_len: usize,
    band: f64,
) -> Result<AgreementReport> {
    same_alphabet(a, b)?;
    let va = values_for(a, max_len);
    let vb = values_for(b, max_len);
    let mut report = AgreementReport::default();
    for ((w, x), (_, y)) in va.iter().zip(&vb) {
        report.record(a, b, w, x, y, band);
    }
    Ok(report)
}

/// Same comparison restricted to an explicit word list.
pub fn check_agreement_on<A: Automaton, B: Automaton>(
    a: &A,
    b: &B,
    words: &[Word],
    band: f64,
) -> Result<AgreementReport> {
    same_alphabet(a, b)?;
    let mut report = AgreementReport::default();
    for w in words {
        let x = a.evaluate(w)?;
        let y = b.evaluate(w)?;
        report.record(a, b, w, &x, &y, band);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::gfa_from_rows;
    use crate::scalar::BOUNDARY_TOL;

    #[test]
    fn detects_disagreement_and_boundary() {
        let g = gfa_from_rows(&["a"], vec![1.0], vec![vec![vec![0.5]]], vec![1.0], 0.3).unwrap();
        let h = gfa_from_rows(&["a"], vec![1.0], vec![vec![vec![0.5]]], vec![1.0], 0.25).unwrap();
        // f = 1, 1/2, 1/4, 1/8: cutpoint 0.25 hits exactly at length 2
        let r = check_agreement(&g, &h, 3, BOUNDARY_TOL).unwrap();
        assert_eq!(r.words_checked, 4);
        assert!(r.disagreements.is_empty());
        assert_eq!(r.boundary_flags.len(), 1);
        assert_eq!(r.boundary_flags[0].word, vec![0, 0]);
        assert_eq!(r.boundary_flags[0].machine, 'B');

        let k = gfa_from_rows(&["a"], vec![1.0], vec![vec![vec![0.5]]], vec![1.0], 0.2).unwrap();
        let r = check_agreement(&g, &k, 3, BOUNDARY_TOL).unwrap();
        assert_eq!(r.disagreements.len(), 1);
        assert_eq!(r.disagreements[0].word, vec![0, 0]);
    }

    #[test]
    fn alphabet_mismatch() {
        let g = gfa_from_rows(&["a"], vec![1.0], vec![vec![vec![1.0]]], vec![1.0], 0.0).unwrap();
        let h = gfa_from_rows(&["b"], vec![1.0], vec![vec![vec![1.0]]], vec![1.0], 0.0).unwrap();
        assert!(matches!(check_agreement(&g, &h, 2, 1e-9), Err(Error::AlphabetMismatch(..))));
    }
}
