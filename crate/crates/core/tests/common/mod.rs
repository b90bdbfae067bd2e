#![allow(dead_code)]

use cutpoint_core::models::Gfa;
use cutpoint_core::random::random_rational_gfa;
use cutpoint_core::scalar::ratio;
use cutpoint_core::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x5eed_2026;

/// The fixed 50-machine random GFA corpus: `k ∈ 1..=4`, `|Σ| ∈ 1..=3`.
pub fn gfa_corpus() -> Vec<Gfa<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..50)
        .map(|i| random_rational_gfa(&mut rng, 1 + i % 4, 1 + (i / 4) % 3))
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random rational point of the simplex `Δ^{m−1}`; roughly
/// one coordinate in three is forced to zero to vary supports.
pub fn simplex_point(rng: &mut impl Rng, m: usize) -> Vec<Rational> {
    loop {
        let weights: Vec<i64> = (0..m)
            .map(|_| if rng.gen_bool(0.3) { 0 } else { rng.gen_range(1..=6) })
            .collect();
        let total: i64 = weights.iter().sum();
        if total == 0 {
            continue;
        }
        return weights.iter().map(|&w| ratio(w, total)).collect();
    }
}

pub fn vertex(m: usize, i: usize) -> Vec<Rational> {
    (0..m).map(|j| ratio((i == j) as i64, 1)).collect()
}
