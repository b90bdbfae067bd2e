use rayon::prelude::*;

use crate::models::{Automaton, Word};

/// All words of length `0..=max_len` over `alphabet_size` symbols, shortest
/// first, lexicographic by symbol index within each length.
pub fn enumerate_words(alphabet_size: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        let next: Vec<Word> = layer
            .iter()
            .flat_map(|w| {
                (0..alphabet_size).map(move |s| {
                    let mut w = w.clone();
                    w.push(s);
                    w
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Calls `f(word, value)` for every word up to `max_len`, in canonical order,
/// sharing prefix computations.
pub fn for_each_value<A: Automaton>(machine: &A, max_len: usize, mut f: impl FnMut(&[usize], &A::Value)) {
    let k = machine.alphabet().len();
    let mut layer: Vec<(Word, A::State)> = vec![(Vec::new(), machine.start())];
    for len in 0..=max_len {
        for (w, s) in &layer {
            f(w, &machine.finish(s));
        }
        if len == max_len {
            break;
        }
        layer = layer
            .par_iter()
            .flat_map_iter(|(w, s)| {
                (0..k).map(move |sym| {
                    let mut w2 = w.clone();
                    w2.push(sym);
                    (w2, machine.step(s, sym))
                })
            })
            .collect();
    }
}

/// Values on every word up to `max_len`, in canonical order.
pub fn values_for<A: Automaton>(machine: &A, max_len: usize) -> Vec<(Word, A::Value)> {
    let mut out = Vec::new();
    for_each_value(machine, max_len, |w, v| out.push((w.to_vec(), v.clone())));
    out
}
