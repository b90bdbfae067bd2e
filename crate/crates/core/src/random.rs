//! Random instances for tests, property checks and the CLI's sampled runs.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::linalg::{ComplexMatrix, Matrix};
use crate::models::{Alphabet, Channel, Gfa, Gqfa};
use crate::scalar::{ratio, Rational};

fn entry(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_complex(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    Matrix::from_fn(rows, cols, |_, _| entry(rng))
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let g = random_complex(rng, n, n);
    g.try_add(&g.adjoint()).unwrap().scale_real(0.5)
}

/// `G G† / Tr(G G†)` for a random `G`.
pub fn random_density(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let g = random_complex(rng, n, n);
    let p = g.matmul(&g.adjoint()).unwrap();
    let tr = p.trace().re;
    p.scale_real(1.0 / tr)
}

/// Matrix with orthonormal columns from Gram–Schmidt on a random `rows×cols`
/// matrix (`rows ≥ cols`).
pub fn random_isometry(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    assert!(rows >= cols);
    let g = random_complex(rng, rows, cols);
    let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut v = g.column(j);
        // two passes keep the columns orthogonal to working precision
        for _ in 0..2 {
            for u in &q {
                let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= norm);
        q.push(v);
    }
    Matrix::from_fn(rows, cols, |i, j| q[j][i])
}

pub fn random_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    random_isometry(rng, n, n)
}

/// Channel from a random Stinespring isometry `C^n → C^(r·n)`, cut into `r`
/// Kraus blocks.
pub fn random_channel(rng: &mut impl Rng, n: usize, kraus_count: usize) -> Channel {
    let v = random_isometry(rng, n * kraus_count, n);
    let kraus = (0..kraus_count)
        .map(|b| Matrix::from_fn(n, n, |i, j| v[(b * n + i, j)]))
        .collect();
    Channel::new(kraus).expect("isometry blocks are trace preserving")
}

/// Orthogonal projector onto a random subspace of the given rank.
pub fn random_projector(rng: &mut impl Rng, n: usize, rank: usize) -> ComplexMatrix {
    if rank == 0 {
        return ComplexMatrix::zeros(n, n);
    }
    let v = random_isometry(rng, n, rank);
    v.matmul(&v.adjoint()).unwrap()
}

pub fn symbol_names(count: usize) -> Vec<String> {
    (0..count).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

/// Random GQFA on `C^n` with the given number of symbols and a cutpoint drawn
/// from `[0.2, 0.8)`.
pub fn random_gqfa(rng: &mut impl Rng, n: usize, symbols: usize) -> Gqfa {
    let alphabet = Alphabet::new(symbol_names(symbols)).unwrap();
    let channels = (0..symbols)
        .map(|_| {
            let r = rng.gen_range(1..=3);
            random_channel(rng, n, r)
        })
        .collect();
    let rank = rng.gen_range(1..n);
    Gqfa::new(
        alphabet,
        random_density(rng, n),
        channels,
        random_projector(rng, n, rank),
        rng.gen_range(0.2..0.8),
    )
    .expect("random GQFA is valid")
}

/// Rational in `[-bound, bound]` with denominator at most 4.
pub fn random_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    let den = *[1i64, 1, 2, 3, 4].choose(rng).unwrap();
    ratio(rng.gen_range(-bound * den..=bound * den), den)
}

fn sparse_rational(rng: &mut impl Rng) -> Rational {
    if rng.gen_bool(0.25) {
        ratio(0, 1)
    } else {
        random_rational(rng, 3)
    }
}

/// Random rational GFA with entries in `[-3, 3]` and cutpoint in `[-2, 2]`.
/// Roughly a quarter of the entries are zeroed to vary sign patterns.
pub fn random_rational_gfa(
    rng: &mut impl Rng,
    states: usize,
    symbols: usize,
) -> Gfa<Rational> {
    let initial = (0..states).map(|_| sparse_rational(rng)).collect();
    let transitions = (0..symbols)
        .map(|_| Matrix::from_fn(states, states, |_, _| sparse_rational(rng)))
        .collect();
    let fin = (0..states).map(|_| sparse_rational(rng)).collect();
    let cutpoint = random_rational(rng, 2);
    Gfa::new(
        Alphabet::new(symbol_names(symbols)).unwrap(),
        initial,
        transitions,
        fin,
        cutpoint,
    )
    .expect("random GFA is well formed")
}
