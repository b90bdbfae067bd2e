//! Classical automata viewed as quantum ones.

use super::{Alphabet, Channel, Gqfa, Pfa};
use crate::error::{Error, Result};
use crate::linalg::complex::real;
use crate::linalg::ComplexMatrix;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Symbol appended to the embedded machine's alphabet for the end-marker.
pub const END_SYMBOL: &str = "#";

/// Channel acting on diagonal states as the stochastic matrix `P`:
/// Kraus operators `√P[i,j] |j⟩⟨i|` for every positive entry.
pub fn stochastic_channel(p: &Matrix<f64>) -> Result<Channel> {
    let n = p.rows();
    let mut kraus = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if p[(i, j)] > 0.0 {
                kraus.push(ComplexMatrix::unit(n, j, i).scale_real(p[(i, j)].sqrt()));
            }
        }
    }
    if kraus.is_empty() {
        return Err(Error::Invalid("stochastic matrix without positive entries".into()));
    }
    Channel::new(kraus)
}

/// Embeds a PFA into a GQFA of the same dimension. Distributions become
/// diagonal density matrices and `F` becomes a diagonal projector. The
/// end-marker matrix is exposed as an extra trailing symbol [`END_SYMBOL`], so
/// `f_Q(w·#) = f_P(w)`.
pub fn pfa_as_qfa<S: Scalar>(pfa: &Pfa<S>) -> Result<Gqfa> {
    let pfa = pfa.to_f64();
    let mut names = pfa.alphabet().symbols().to_vec();
    names.push(END_SYMBOL.to_string());
    let alphabet = Alphabet::new(names)?;
    let diag: Vec<_> = pfa.initial().iter().map(|&x| real(x)).collect();
    let rho0 = ComplexMatrix::diagonal(&diag);
    let mut channels = pfa
        .transitions()
        .iter()
        .map(stochastic_channel)
        .collect::<Result<Vec<_>>>()?;
    channels.push(stochastic_channel(pfa.end_marker())?);
    let n = pfa.states();
    let mut accept = ComplexMatrix::zeros(n, n);
    for &f in pfa.accepting() {
        accept[(f, f)] = real(1.0);
    }
    Gqfa::new(alphabet, rho0, channels, accept, *pfa.cutpoint())
}
