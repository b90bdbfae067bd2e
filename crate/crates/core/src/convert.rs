//! Alphabet-preserving conversion of a `k`-state GFA with cutpoint `λ` into a
//! `2k+6`-state PFA with cutpoint `½`, in exact rational arithmetic.
//!
//! Pipeline, each stage kept in [`ConversionTrace`]:
//!
//! 1. [`shift_cutpoint`]: append an inert state carrying `−λ`, so the word
//!    function becomes `f_G(w) − λ` with cutpoint `0`.
//! 2. [`sign_split`]: write every matrix as positive minus negative part and
//!    run both signs in parallel blocks; all vectors and matrices become
//!    nonnegative except the final vector `(ṽ, −ṽ)`.
//! 3. [`zero_sum_embed`]: border each `Â_σ` so every row and column sums to
//!    zero. The border rows never feed back into the middle block.
//! 4. [`choose_scale_constant`] and [`stochasticize`]: `P_σ = (B_σ + CJ)/(CN)`
//!    is strictly positive and row-stochastic, and
//!    `P_w = B_w/(CN)^ℓ + J/N` for every word of length `ℓ ≥ 1`.
//! 5. [`end_marker_decision`]: rescale the signed readout `g` into
//!    `h = ½ + g/(2M)` and realise it by an end-marker step into an
//!    accepting or rejecting sink.
//!
//! The result satisfies `f_P(w) = ½ + (f_G(w) − λ) / (2·M·s·(CN)^|w|)` with
//! `s = ‖û‖₁`, so the strict cutpoint decisions coincide on every word.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::linearize::qfa_to_gfa;
use crate::models::{Alphabet, Gfa, Gqfa, Pfa};
use crate::scalar::{ratio, Rational, Scalar};

/// Nonnegative split of a cutpoint-zero GFA.
#[derive(Debug, Clone, PartialEq)]
pub struct SignSplit {
    pub initial: Vec<Rational>,
    pub transitions: Vec<Matrix<Rational>>,
    pub fin: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degenerate {
    /// `û = 0`: the shifted word function is identically zero.
    ZeroInitial,
    /// `g = 0`: the readout vanishes.
    ZeroReadout,
}

/// Every intermediate of [`gfa_to_pfa`]. Stages after a degenerate exit are
/// `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConversionTrace {
    pub shifted: Gfa<Rational>,
    pub split: SignSplit,
    pub zero_sum: Vec<Matrix<Rational>>,
    /// `C`.
    pub scale: Rational,
    /// `N = 2k + 4`.
    pub size: usize,
    /// `s = ‖û‖₁`.
    pub s: Rational,
    pub g: Option<Vec<Rational>>,
    /// `M = maxᵢ |gᵢ|`.
    pub m_dec: Option<Rational>,
    pub h: Option<Vec<Rational>>,
    /// `π`, length `N`.
    pub initial: Option<Vec<Rational>>,
    /// `(B_σ + CJ)/(CN)`, `N×N`, before the sinks are appended.
    pub stochastic: Vec<Matrix<Rational>>,
    pub degenerate: Option<Degenerate>,
}

impl ConversionTrace {
    /// `C·N`.
    pub fn cn(&self) -> Rational {
        &self.scale * Rational::from_integer(BigInt::from(self.size))
    }

    /// Exact acceptance the construction promises for a word of length
    /// `len` on which `f_G(w) − λ = excess`.
    pub fn predicted_acceptance(&self, excess: &Rational, len: usize) -> Option<Rational> {
        let m = self.m_dec.as_ref()?;
        let denom = Rational::from_integer(BigInt::from(2)) * m * &self.s * num_traits::pow(self.cn(), len);
        Some(ratio(1, 2) + excess / denom)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConversionOptions {
    /// `C = max |B_σ[i,j]| + scale_margin`; must be positive.
    pub scale_margin: Rational,
}

impl Default for ConversionOptions {
    fn default() -> Self {
        Self {
            scale_margin: Rational::one(),
        }
    }
}

/// `(k+1)`-state GFA with cutpoint `0` computing `f_G(w) − λ`.
pub fn shift_cutpoint<S: Scalar>(g: &Gfa<S>) -> Gfa<S> {
    let k = g.states();
    let mut initial = g.initial.clone();
    initial.push(-g.cutpoint.clone());
    let mut fin = g.fin.clone();
    fin.push(S::one());
    let transitions = g
        .transitions
        .iter()
        .map(|a| {
            Matrix::from_fn(k + 1, k + 1, |i, j| match (i < k, j < k) {
                (true, true) => a[(i, j)].clone(),
                (false, false) => S::one(),
                _ => S::zero(),
            })
        })
        .collect();
    Gfa {
        alphabet: g.alphabet.clone(),
        initial,
        transitions,
        fin,
        cutpoint: S::zero(),
    }
}

fn positive_part(x: &Rational) -> Rational {
    if x.is_positive() {
        x.clone()
    } else {
        Rational::zero()
    }
}

fn negative_part(x: &Rational) -> Rational {
    if x.is_negative() {
        -x.clone()
    } else {
        Rational::zero()
    }
}

/// `Â = [[P, N], [N, P]]`, `û = (u⁺, u⁻)`, `v̂ = (ṽ, −ṽ)`.
pub fn sign_split(g0: &Gfa<Rational>) -> Result<SignSplit> {
    if !g0.cutpoint.is_zero() {
        return Err(Error::Invalid(format!(
            "sign split needs cutpoint 0, got {}",
            g0.cutpoint
        )));
    }
    let m = g0.states();
    let initial = g0
        .initial
        .iter()
        .map(positive_part)
        .chain(g0.initial.iter().map(negative_part))
        .collect();
    let transitions = g0
        .transitions
        .iter()
        .map(|a| {
            Matrix::from_fn(2 * m, 2 * m, |i, j| {
                let x = &a[(i % m, j % m)];
                if (i < m) == (j < m) {
                    positive_part(x)
                } else {
                    negative_part(x)
                }
            })
        })
        .collect();
    let fin = g0
        .fin
        .iter()
        .cloned()
        .chain(g0.fin.iter().map(|x| -x.clone()))
        .collect();
    Ok(SignSplit {
        initial,
        transitions,
        fin,
    })
}

/// Borders a nonnegative `d×d` matrix into a `(d+2)×(d+2)` matrix whose rows
/// and columns all sum to zero:
///
/// ```text
/// [  0    0ᵀ   0 ]
/// [ −r    Â    0 ]      r = Â·1,  c = Âᵀ·1,  T = 1ᵀ·r
/// [  T   −cᵀ   0 ]
/// ```
pub fn zero_sum_block(a: &Matrix<Rational>) -> Matrix<Rational> {
    let d = a.rows();
    let r = a.row_sums();
    let c = a.col_sums();
    let total = r.iter().fold(Rational::zero(), |acc, x| acc + x);
    Matrix::from_fn(d + 2, d + 2, |i, j| {
        if i == 0 || j == d + 1 {
            Rational::zero()
        } else if i <= d {
            if j == 0 {
                -r[i - 1].clone()
            } else {
                a[(i - 1, j - 1)].clone()
            }
        } else if j == 0 {
            total.clone()
        } else {
            -c[j - 1].clone()
        }
    })
}

pub fn zero_sum_embed(a_hat: &[Matrix<Rational>]) -> Vec<Matrix<Rational>> {
    a_hat.iter().map(zero_sum_block).collect()
}

/// `max |B_σ[i,j]| + 1`.
pub fn choose_scale_constant(b: &[Matrix<Rational>]) -> Rational {
    choose_scale_constant_with(b, &Rational::one())
}

pub fn choose_scale_constant_with(b: &[Matrix<Rational>], margin: &Rational) -> Rational {
    let max = b
        .iter()
        .flat_map(Matrix::iter)
        .map(Signed::abs)
        .fold(Rational::zero(), |m, x| if x > m { x } else { m });
    max + margin
}

/// `(B_σ + CJ)/(CN)` for every symbol.
pub fn stochasticize(b: &[Matrix<Rational>], scale: &Rational, size: usize) -> Result<Vec<Matrix<Rational>>> {
    let cn = scale * Rational::from_integer(BigInt::from(size));
    b.iter()
        .map(|m| {
            if m.dims() != (size, size) {
                return Err(Error::Dimension(format!(
                    "zero-sum matrix is {}x{}, expected {size}x{size}",
                    m.rows(),
                    m.cols()
                )));
            }
            if let Some(x) = m.iter().find(|x| Signed::abs(*x) >= *scale) {
                return Err(Error::ScaleBreach {
                    entry: x.to_string(),
                    scale: scale.to_string(),
                });
            }
            Ok(m.map(|x| (x + scale) / &cn))
        })
        .collect()
}

/// `(h, M)` with `M = max|gᵢ|` and `h = ½·1 + g/(2M)`; `None` when `g = 0`.
pub fn end_marker_decision(g: &[Rational]) -> Option<(Vec<Rational>, Rational)> {
    let m = g
        .iter()
        .map(Signed::abs)
        .fold(Rational::zero(), |acc, x| if x > acc { x } else { acc });
    if m.is_zero() {
        return None;
    }
    let half = ratio(1, 2);
    let two_m = Rational::from_integer(BigInt::from(2)) * &m;
    let h = g.iter().map(|x| &half + x / &two_m).collect();
    Some((h, m))
}

/// Two-state PFA with `f ≡ 0` and cutpoint `½`: recognizes the empty language.
pub fn degenerate_pfa(alphabet: &Alphabet) -> Pfa<Rational> {
    let id = Matrix::<Rational>::identity(2);
    Pfa::new(
        alphabet.clone(),
        vec![Rational::one(), Rational::zero()],
        vec![id.clone(); alphabet.len()],
        id,
        vec![1],
        ratio(1, 2),
    )
    .expect("identity machine is stochastic")
}

/// Converts `g` into an equivalent PFA with cutpoint `½`. Float inputs are
/// read as the exact dyadic rationals they denote.
pub fn gfa_to_pfa<S: Scalar>(g: &Gfa<S>) -> Result<(Pfa<Rational>, ConversionTrace)> {
    gfa_to_pfa_with(g, &ConversionOptions::default())
}

pub fn gfa_to_pfa_with<S: Scalar>(
    g: &Gfa<S>,
    options: &ConversionOptions,
) -> Result<(Pfa<Rational>, ConversionTrace)> {
    if !options.scale_margin.is_positive() {
        return Err(Error::Invalid("scale margin must be positive".into()));
    }
    let exact = g.to_rational()?;
    let shifted = shift_cutpoint(&exact);
    let split = sign_split(&shifted)?;
    let zero_sum = zero_sum_embed(&split.transitions);
    let scale = choose_scale_constant_with(&zero_sum, &options.scale_margin);
    let d = split.initial.len();
    let size = d + 2;
    let stochastic = stochasticize(&zero_sum, &scale, size)?;
    let s = split.initial.iter().fold(Rational::zero(), |acc, x| acc + x);

    let mut trace = ConversionTrace {
        shifted,
        split,
        zero_sum,
        scale,
        size,
        s,
        g: None,
        m_dec: None,
        h: None,
        initial: None,
        stochastic,
        degenerate: None,
    };
    if trace.s.is_zero() {
        trace.degenerate = Some(Degenerate::ZeroInitial);
        return Ok((degenerate_pfa(&g.alphabet), trace));
    }

    let pad = |v: &[Rational]| -> Vec<Rational> {
        std::iter::once(Rational::zero())
            .chain(v.iter().cloned())
            .chain(std::iter::once(Rational::zero()))
            .collect()
    };
    let readout = pad(&trace.split.fin);
    trace.g = Some(readout.clone());
    let Some((h, m_dec)) = end_marker_decision(&readout) else {
        trace.degenerate = Some(Degenerate::ZeroReadout);
        return Ok((degenerate_pfa(&g.alphabet), trace));
    };
    let initial: Vec<Rational> = pad(&trace.split.initial.iter().map(|x| x / &trace.s).collect::<Vec<_>>());
    trace.m_dec = Some(m_dec);
    trace.h = Some(h.clone());
    trace.initial = Some(initial.clone());

    // sinks: q_acc = N, q_rej = N + 1
    let total = size + 2;
    let with_sinks = |p: &Matrix<Rational>| {
        Matrix::from_fn(total, total, |i, j| {
            if i < size && j < size {
                p[(i, j)].clone()
            } else if i == j && i >= size {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    };
    let transitions = trace.stochastic.iter().map(with_sinks).collect();
    let end_marker = Matrix::from_fn(total, total, |i, j| {
        if i < size {
            match j {
                j if j == size => h[i].clone(),
                j if j == size + 1 => Rational::one() - &h[i],
                _ => Rational::zero(),
            }
        } else if i == j {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let mut pi = initial;
    pi.extend([Rational::zero(), Rational::zero()]);
    let pfa = Pfa::new(g.alphabet.clone(), pi, transitions, end_marker, vec![size], ratio(1, 2))?;
    Ok((pfa, trace))
}

/// Linearize then convert: a `2n²+6`-state PFA for an `n`-dimensional GQFA.
pub fn qfa_to_pfa(q: &Gqfa) -> Result<(Pfa<Rational>, ConversionTrace)> {
    gfa_to_pfa(&qfa_to_gfa(q)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{gfa_from_rows, Automaton};
    use crate::scalar::int;
    use crate::verify::enumerate_words;

    fn worked_example() -> Gfa<Rational> {
        gfa_from_rows(&["a"], vec![int(1)], vec![vec![vec![int(-1)]]], vec![int(1)], int(0)).unwrap()
    }

    #[test]
    fn shift_moves_cutpoint_into_value() {
        let g = gfa_from_rows(&["a"], vec![int(2)], vec![vec![vec![int(3)]]], vec![int(1)], int(5)).unwrap();
        let s = shift_cutpoint(&g);
        assert_eq!(s.states(), 2);
        assert_eq!(s.cutpoint, int(0));
        assert_eq!(s.evaluate(&[0]).unwrap(), int(1));
        assert_eq!(s.evaluate(&[]).unwrap(), int(2 - 5));
    }

    #[test]
    fn shift_with_zero_cutpoint_is_inert() {
        let g = crate::random::random_rational_gfa(&mut rand::rngs::mock::StepRng::new(3, 7), 2, 2);
        let g = Gfa { cutpoint: int(0), ..g };
        let s = shift_cutpoint(&g);
        for w in enumerate_words(2, 3) {
            assert_eq!(s.evaluate(&w).unwrap(), g.evaluate(&w).unwrap());
        }
    }

    #[test]
    fn split_of_a_negative_scalar() {
        let g0 = gfa_from_rows(&["a"], vec![int(1)], vec![vec![vec![int(-2)]]], vec![int(1)], int(0)).unwrap();
        let split = sign_split(&g0).unwrap();
        let want = Matrix::from_rows(vec![vec![int(0), int(2)], vec![int(2), int(0)]]).unwrap();
        assert_eq!(split.transitions[0], want);
        // (p, q) = (1, 0): one step gives (0, 2), difference −2
        let after = split.transitions[0].left_mul(&[int(1), int(0)]).unwrap();
        assert_eq!(&after[0] - &after[1], int(-2));
    }

    #[test]
    fn split_of_initial_vector() {
        let g0 = gfa_from_rows(
            &["a"],
            vec![int(1), int(-3)],
            vec![vec![vec![int(1), int(0)], vec![int(0), int(1)]]],
            vec![int(1), int(1)],
            int(0),
        )
        .unwrap();
        let split = sign_split(&g0).unwrap();
        assert_eq!(split.initial, vec![int(1), int(0), int(0), int(3)]);
        assert_eq!(split.fin, vec![int(1), int(1), int(-1), int(-1)]);
        let nonzero = Gfa { cutpoint: int(1), ..g0 };
        assert!(sign_split(&nonzero).is_err());
    }

    #[test]
    fn zero_sum_border() {
        let a = Matrix::from_rows(vec![vec![int(0), int(2)], vec![int(2), int(0)]]).unwrap();
        let b = zero_sum_block(&a);
        assert_eq!(b.dims(), (4, 4));
        assert!(b.row_sums().iter().all(Zero::is_zero));
        assert!(b.col_sums().iter().all(Zero::is_zero));
        assert_eq!(b[(3, 0)], int(4));
        assert_eq!(b[(1, 0)], int(-2));
        assert_eq!(b[(3, 1)], int(-2));
        assert_eq!(zero_sum_block(&Matrix::zeros(2, 2)), Matrix::zeros(4, 4));
    }

    #[test]
    fn scale_constant_rule() {
        let b = vec![Matrix::from_rows(vec![vec![int(4), int(-1)], vec![int(0), int(0)]]).unwrap()];
        assert_eq!(choose_scale_constant(&b), int(5));
        assert_eq!(choose_scale_constant(&[Matrix::zeros(3, 3)]), int(1));
        let b = vec![Matrix::from_rows(vec![vec![ratio(-7, 2)]]).unwrap()];
        assert_eq!(choose_scale_constant(&b), ratio(9, 2));
        assert_eq!(choose_scale_constant_with(&b, &ratio(1, 10)), ratio(18, 5));
    }

    #[test]
    fn stochasticize_uniform_and_breach() {
        let out = stochasticize(&[Matrix::zeros(4, 4)], &int(1), 4).unwrap();
        assert!(out[0].iter().all(|x| *x == ratio(1, 4)));
        let b = vec![Matrix::from_rows(vec![vec![int(2), int(-2)], vec![int(-2), int(2)]]).unwrap()];
        assert!(matches!(stochasticize(&b, &int(2), 2), Err(Error::ScaleBreach { .. })));
    }

    #[test]
    fn end_marker_vector() {
        let g = vec![int(0), int(1), int(-1), int(0)];
        let (h, m) = end_marker_decision(&g).unwrap();
        assert_eq!(m, int(1));
        assert_eq!(h, vec![ratio(1, 2), int(1), int(0), ratio(1, 2)]);
        let g = vec![int(0), ratio(1, 2), ratio(-1, 2), int(0)];
        assert_eq!(end_marker_decision(&g).unwrap().0, h);
        assert!(end_marker_decision(&[int(0), int(0)]).is_none());
    }

    #[test]
    fn worked_example_values() {
        let (p, trace) = gfa_to_pfa(&worked_example()).unwrap();
        assert_eq!(p.states(), 8);
        assert_eq!(trace.scale, int(5));
        assert_eq!(trace.size, 6);
        assert_eq!(trace.s, int(1));
        assert_eq!(trace.m_dec, Some(int(1)));
        assert_eq!(p.evaluate(&[0]).unwrap(), ratio(29, 60));
        assert_eq!(p.evaluate(&[0, 0]).unwrap(), ratio(901, 1800));
        for m in &trace.stochastic {
            assert!(m.iter().all(|x| {
                let t = x * Rational::from_integer(BigInt::from(30)) - int(5);
                t.is_integer()
            }));
            assert!(m.row_sums().iter().all(One::is_one));
        }
    }

    #[test]
    fn word_product_decomposition() {
        // P_w = B_w/(CN)^ℓ + J/N on the worked example
        let (_, trace) = gfa_to_pfa(&worked_example()).unwrap();
        let n = trace.size;
        let cn = trace.cn();
        let j_over_n = Matrix::from_fn(n, n, |_, _| ratio(1, n as i64));
        let mut pw = trace.stochastic[0].clone();
        let mut bw = trace.zero_sum[0].clone();
        for len in 1..=4 {
            let scale = num_traits::pow(cn.clone(), len);
            let rhs = bw.map(|x| x / &scale).try_add(&j_over_n).unwrap();
            assert_eq!(pw, rhs, "length {len}");
            // middle block of B_w is Â_w
            let mut aw = trace.split.transitions[0].clone();
            for _ in 1..len {
                aw = aw.matmul(&trace.split.transitions[0]).unwrap();
            }
            for i in 0..n - 2 {
                for j in 0..n - 2 {
                    assert_eq!(bw[(i + 1, j + 1)], aw[(i, j)]);
                }
            }
            pw = pw.matmul(&trace.stochastic[0]).unwrap();
            bw = bw.matmul(&trace.zero_sum[0]).unwrap();
        }
    }

    #[test]
    fn degenerate_inputs() {
        let zero_init = gfa_from_rows(&["a"], vec![int(0)], vec![vec![vec![int(2)]]], vec![int(1)], int(0)).unwrap();
        let (p, trace) = gfa_to_pfa(&zero_init).unwrap();
        assert_eq!(trace.degenerate, Some(Degenerate::ZeroInitial));
        assert_eq!(p.states(), 2);
        assert_eq!(p.evaluate(&[]).unwrap(), int(0));
        assert!(!crate::models::accepts(&p, &[0, 0]).unwrap());

        // readout vanishes only if ṽ = 0, impossible after the shift; the
        // degenerate machine itself is still checked here
        let d = degenerate_pfa(&Alphabet::new(["x", "y"]).unwrap());
        assert_eq!(d.states(), 2);
        assert_eq!(*d.cutpoint(), ratio(1, 2));
        assert_eq!(d.evaluate(&[1, 0]).unwrap(), int(0));
    }

    #[test]
    fn scale_margin_option() {
        let opts = ConversionOptions {
            scale_margin: ratio(1, 3),
        };
        let (p, trace) = gfa_to_pfa_with(&worked_example(), &opts).unwrap();
        assert_eq!(trace.scale, ratio(13, 3));
        let excess = int(-1);
        assert_eq!(p.evaluate(&[0]).unwrap(), trace.predicted_acceptance(&excess, 1).unwrap());
        assert!(gfa_to_pfa_with(&worked_example(), &ConversionOptions { scale_margin: int(0) }).is_err());
    }
}
