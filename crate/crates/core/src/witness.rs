//! Prepare–test family `Q_n` that shatters `n²−1` quantum states.
//!
//! Indices `k` of prepare symbols are 1-based throughout (`p1 … p_d`), and
//! sign vectors are written `tau:+--…` with one character per coordinate.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::complex::real;
use crate::linalg::{gell_mann_basis, operator_norm, spectral_decompose, ComplexMatrix, HermitianBasis, Matrix};
use crate::models::{Alphabet, Automaton, Channel, Gqfa, Word};
use crate::scalar::{Decision, BOUNDARY_TOL};

pub const TEST_PREFIX: &str = "tau:";

/// Largest `d` for which the exact `max_s ‖X_s‖` is enumerated.
pub const EXACT_MAX_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormBound {
    /// `Σⱼ ‖Hⱼ‖_op`.
    #[default]
    Triangle,
    /// `max_s ‖X_s‖_op` over all `2^d` sign vectors.
    ExactMax,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(Vec<bool>);

impl SignVector {
    pub fn new(signs: Vec<bool>) -> Self {
        Self(signs)
    }

    pub fn from_ints(signs: &[i32]) -> Result<Self> {
        signs
            .iter()
            .map(|&s| match s {
                1 => Ok(true),
                -1 => Ok(false),
                other => Err(Error::Invalid(format!("sign {other} is not ±1"))),
            })
            .collect::<Result<_>>()
            .map(Self)
    }

    /// `+1` on the members of `subset` (1-based), `−1` elsewhere.
    pub fn from_subset(d: usize, subset: &[usize]) -> Result<Self> {
        let mut signs = vec![false; d];
        for &k in subset {
            if k == 0 || k > d {
                return Err(Error::IndexRange { index: k, max: d });
            }
            signs[k - 1] = true;
        }
        Ok(Self(signs))
    }

    pub fn from_mask(d: usize, mask: u64) -> Self {
        Self((0..d).map(|j| mask >> j & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `s_k` for 1-based `k`.
    pub fn sign(&self, k: usize) -> f64 {
        if self.0[k - 1] {
            1.0
        } else {
            -1.0
        }
    }

    pub fn signs(&self) -> &[bool] {
        &self.0
    }

    pub fn subset(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&k| self.0[k - 1]).collect()
    }

    pub fn flipped(&self, k: usize) -> Self {
        let mut s = self.0.clone();
        s[k - 1] = !s[k - 1];
        Self(s)
    }

    pub fn symbol(&self) -> String {
        self.to_string()
    }

    /// Parses `tau:+-+` (the prefix is optional).
    pub fn parse(text: &str) -> Result<Self> {
        let body = text.strip_prefix(TEST_PREFIX).unwrap_or(text);
        if body.is_empty() {
            return Err(Error::Invalid(format!("empty sign vector in {text:?}")));
        }
        body.chars()
            .map(|c| match c {
                '+' => Ok(true),
                '-' => Ok(false),
                other => Err(Error::Invalid(format!("bad sign {other:?} in {text:?}"))),
            })
            .collect::<Result<_>>()
            .map(Self)
    }

    pub fn random(rng: &mut impl Rng, d: usize) -> Self {
        Self((0..d).map(|_| rng.gen_bool(0.5)).collect())
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(TEST_PREFIX)?;
        for &s in &self.0 {
            f.write_str(if s { "+" } else { "-" })?;
        }
        Ok(())
    }
}

pub fn prepare_symbol(k: usize) -> String {
    format!("p{k}")
}

/// `ε = 1 / (2n · max_k ‖H_k‖_op)`.
pub fn choose_epsilon(basis: &HermitianBasis) -> Result<f64> {
    traceless(basis)?;
    let mut max = 0.0f64;
    for h in basis.elements() {
        max = max.max(operator_norm(h)?);
    }
    Ok(1.0 / (2.0 * basis.dim() as f64 * max))
}

/// `(t, M_bound)` with `M_bound = Σⱼ ‖Hⱼ‖_op` and `t = 1/(4·M_bound)`.
pub fn choose_t(basis: &HermitianBasis) -> Result<(f64, f64)> {
    traceless(basis)?;
    let mut sum = 0.0;
    for h in basis.elements() {
        sum += operator_norm(h)?;
    }
    Ok((1.0 / (4.0 * sum), sum))
}

/// `max_s ‖Σ sⱼHⱼ‖_op` by enumeration. `s` and `−s` give the same norm, so
/// only vectors with `s₁ = +1` are visited.
pub fn exact_max_norm(basis: &HermitianBasis) -> Result<f64> {
    traceless(basis)?;
    let d = basis.len();
    if d > EXACT_MAX_LIMIT {
        return Err(Error::Invalid(format!(
            "exact sign-vector maximum needs 2^{d} eigen-decompositions"
        )));
    }
    (0..1u64 << (d - 1))
        .into_par_iter()
        .map(|mask| operator_norm(&x_s(basis, &SignVector::from_mask(d, mask << 1 | 1))))
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
}

fn traceless(basis: &HermitianBasis) -> Result<()> {
    if !basis.traceless_only() {
        return Err(Error::Invalid("witness needs a traceless basis".into()));
    }
    Ok(())
}

fn x_s(basis: &HermitianBasis, s: &SignVector) -> ComplexMatrix {
    let n = basis.dim();
    basis
        .elements()
        .iter()
        .zip(s.signs())
        .fold(ComplexMatrix::zeros(n, n), |acc, (h, &plus)| {
            acc.try_add(&h.scale_real(if plus { 1.0 } else { -1.0 })).unwrap()
        })
}

#[derive(Debug, Clone)]
pub struct WitnessParams {
    n: usize,
    basis: HermitianBasis,
    epsilon: f64,
    t: f64,
    m_bound: f64,
    states: Vec<ComplexMatrix>,
}

impl WitnessParams {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_bound(n, NormBound::Triangle)
    }

    pub fn with_bound(n: usize, bound: NormBound) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!("witness needs n >= 2, got {n}")));
        }
        let basis = gell_mann_basis(n, true)?;
        let epsilon = choose_epsilon(&basis)?;
        let (t, m_bound) = match bound {
            NormBound::Triangle => choose_t(&basis)?,
            NormBound::ExactMax => {
                let m = exact_max_norm(&basis)?;
                (1.0 / (4.0 * m), m)
            }
        };
        let mixed = ComplexMatrix::identity(n).scale_real(1.0 / n as f64);
        let states = basis
            .elements()
            .iter()
            .map(|h| mixed.try_add(&h.scale_real(epsilon)).unwrap())
            .collect();
        Ok(Self {
            n,
            basis,
            epsilon,
            t,
            m_bound,
            states,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `n² − 1`.
    pub fn d(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &HermitianBasis {
        &self.basis
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn m_bound(&self) -> f64 {
        self.m_bound
    }

    /// Promised distance `tε` of every prepare–test value from `½`.
    pub fn margin(&self) -> f64 {
        self.t * self.epsilon
    }

    /// `ρ_k = I/n + εH_k`, 1-based.
    pub fn state(&self, k: usize) -> Result<&ComplexMatrix> {
        self.check_index(k)?;
        Ok(&self.states[k - 1])
    }

    pub fn check_index(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.d() {
            return Err(Error::IndexRange { index: k, max: self.d() });
        }
        Ok(())
    }

    fn check_signs(&self, s: &SignVector) -> Result<()> {
        if s.len() != self.d() {
            return Err(Error::SignLength {
                got: s.len(),
                expected: self.d(),
            });
        }
        Ok(())
    }

    /// Smallest singular value of the `d × n²` matrix whose rows are the
    /// coordinates of `ρ_k − I/n`; positive iff the states are affinely
    /// independent.
    pub fn affine_gap(&self) -> Result<f64> {
        let full = gell_mann_basis(self.n, false)?;
        let mixed = ComplexMatrix::identity(self.n).scale_real(1.0 / self.n as f64);
        let rows = self
            .states
            .iter()
            .map(|rho| crate::linearize::coords(&rho.try_sub(&mixed)?, &full))
            .collect::<Result<Vec<_>>>()?;
        let d = rows.len();
        let gram = Matrix::from_fn(d, d, |i, j| real(crate::linalg::dot(&rows[i], &rows[j])));
        let min = spectral_decompose(&gram)?
            .last()
            .map_or(0.0, |p| p.value);
        Ok(min.max(0.0).sqrt())
    }
}

/// Replacement channel `X ↦ Tr(X) ρ_k` with Kraus operators `√μᵢ |vᵢ⟩⟨j|`.
pub fn prepare_channel(params: &WitnessParams, k: usize) -> Result<Channel> {
    let rho = params.state(k)?;
    let n = params.n;
    let mut kraus = Vec::new();
    for pair in spectral_decompose(rho)? {
        if pair.value <= 0.0 {
            continue;
        }
        let amp = pair.value.sqrt();
        for j in 0..n {
            let mut e = vec![real(0.0); n];
            e[j] = real(1.0);
            kraus.push(ComplexMatrix::outer(&pair.vector, &e).scale_real(amp));
        }
    }
    Channel::new(kraus)
}

#[derive(Debug, Clone)]
pub struct TestSymbol {
    pub s: SignVector,
    pub x: ComplexMatrix,
    /// `E_s = ½I + tX_s`.
    pub e: ComplexMatrix,
    pub channel: Channel,
}

impl TestSymbol {
    pub fn name(&self) -> String {
        self.s.symbol()
    }
}

/// Channel routing the `E_s` outcome to `|1⟩` and its complement to `|2⟩`.
pub fn test_channel(params: &WitnessParams, s: &SignVector) -> Result<TestSymbol> {
    params.check_signs(s)?;
    let n = params.n;
    let x = x_s(&params.basis, s);
    let e = ComplexMatrix::identity(n)
        .scale_real(0.5)
        .try_add(&x.scale_real(params.t))?;
    let accept = basis_vector(n, 0);
    let reject = basis_vector(n, 1);
    let mut kraus = Vec::with_capacity(2 * n);
    for pair in spectral_decompose(&e)? {
        let lambda = pair.value.clamp(0.0, 1.0);
        kraus.push(ComplexMatrix::outer(&accept, &pair.vector).scale_real(lambda.sqrt()));
        kraus.push(ComplexMatrix::outer(&reject, &pair.vector).scale_real((1.0 - lambda).sqrt()));
    }
    Ok(TestSymbol {
        s: s.clone(),
        x,
        e,
        channel: Channel::new(kraus)?,
    })
}

fn basis_vector(n: usize, i: usize) -> Vec<Complex64> {
    (0..n).map(|j| real(if i == j { 1.0 } else { 0.0 })).collect()
}

/// `Q_n` with its prepare channels; test symbols are built on demand since
/// there are `2^(n²−1)` of them.
#[derive(Debug, Clone)]
pub struct Witness {
    params: WitnessParams,
    prepare: Vec<Channel>,
}

pub fn build_witness(n: usize) -> Result<Witness> {
    Witness::new(WitnessParams::new(n)?)
}

impl Witness {
    pub fn new(params: WitnessParams) -> Result<Self> {
        let prepare = (1..=params.d())
            .map(|k| prepare_channel(&params, k))
            .collect::<Result<_>>()?;
        Ok(Self { params, prepare })
    }

    pub fn params(&self) -> &WitnessParams {
        &self.params
    }

    pub fn prepare_channels(&self) -> &[Channel] {
        &self.prepare
    }

    /// GQFA over `p1 … p_d` followed by the given test symbols, in order,
    /// without repeats.
    pub fn gqfa(&self, tests: &[SignVector]) -> Result<Gqfa> {
        let n = self.params.n;
        let mut names: Vec<String> = (1..=self.params.d()).map(prepare_symbol).collect();
        let mut channels = self.prepare.clone();
        let mut seen = std::collections::HashSet::new();
        for s in tests {
            if !seen.insert(s) {
                continue;
            }
            let test = test_channel(&self.params, s)?;
            names.push(test.name());
            channels.push(test.channel);
        }
        Gqfa::new(
            Alphabet::new(names)?,
            ComplexMatrix::identity(n).scale_real(1.0 / n as f64),
            channels,
            ComplexMatrix::unit(n, 0, 0),
            0.5,
        )
    }

    /// All `2^d` test symbols; only sensible for `n = 2`.
    pub fn gqfa_all_tests(&self) -> Result<Gqfa> {
        let d = self.params.d();
        if d > EXACT_MAX_LIMIT {
            return Err(Error::Invalid(format!("2^{d} test symbols")));
        }
        let tests: Vec<_> = (0..1u64 << d).map(|m| SignVector::from_mask(d, m)).collect();
        self.gqfa(&tests)
    }

    /// Acceptance the construction promises for `p_k τ_s`.
    pub fn predicted(&self, k: usize, s: &SignVector) -> Result<f64> {
        self.params.check_index(k)?;
        self.params.check_signs(s)?;
        Ok(0.5 + self.params.margin() * s.sign(k))
    }
}

/// The word `p_k τ_s` over the alphabet of `q`.
pub fn prepare_test_word(q: &Gqfa, k: usize, s: &SignVector) -> Result<Word> {
    Ok(vec![q.alphabet.index_of(&prepare_symbol(k))?, q.alphabet.index_of(&s.symbol())?])
}

/// `f_Q(p_k τ_s)` by density-matrix simulation.
pub fn witness_acceptance(q: &Gqfa, k: usize, s: &SignVector) -> Result<f64> {
    q.evaluate(&prepare_test_word(q, k, s)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShatterCheck {
    pub k: usize,
    pub subset: Vec<usize>,
    pub value: f64,
    pub expected: bool,
    pub accepted: bool,
    /// `|f − ½|`.
    pub margin: f64,
}

impl ShatterCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.accepted
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShatterReport {
    pub checks: Vec<ShatterCheck>,
}

impl ShatterReport {
    pub fn total(&self) -> usize {
        self.checks.len()
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(ShatterCheck::passed)
    }

    pub fn failures(&self) -> Vec<&ShatterCheck> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    pub fn min_margin(&self) -> f64 {
        self.checks.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min)
    }
}

/// For each subset `S` (1-based members) checks that `p_k τ_{s(S)}` is
/// accepted exactly when `k ∈ S`, for every `k`.
pub fn verify_shattering(w: &Witness, subsets: &[Vec<usize>]) -> Result<ShatterReport> {
    let d = w.params.d();
    let signs = subsets
        .iter()
        .map(|s| SignVector::from_subset(d, s))
        .collect::<Result<Vec<_>>>()?;
    let q = w.gqfa(&signs)?;
    let pairs: Vec<(usize, &SignVector)> = signs.iter().flat_map(|s| (1..=d).map(move |k| (k, s))).collect();
    let checks = pairs
        .par_iter()
        .map(|&(k, s)| {
            let value = witness_acceptance(&q, k, s)?;
            let accepted = match q.decide_with(&value, BOUNDARY_TOL) {
                Decision::Boundary { .. } => {
                    return Err(Error::Boundary {
                        value,
                        cutpoint: q.cutpoint,
                        band: BOUNDARY_TOL,
                    })
                }
                d => d.accepted() == Some(true),
            };
            Ok(ShatterCheck {
                k,
                subset: s.subset(),
                value,
                expected: s.signs()[k - 1],
                accepted,
                margin: (value - 0.5).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ShatterReport { checks })
}

/// Every subset of `[d]`.
pub fn all_subsets(d: usize) -> Vec<Vec<usize>> {
    (0..1u64 << d).map(|m| SignVector::from_mask(d, m).subset()).collect()
}

/// `count` independent uniform subsets of `[d]`.
pub fn random_subsets(rng: &mut impl Rng, d: usize, count: usize) -> Vec<Vec<usize>> {
    (0..count).map(|_| SignVector::random(rng, d).subset()).collect()
}
