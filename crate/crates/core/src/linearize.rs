//! Linearization of a GQFA on `C^n` into an `n²`-state GFA.
//!
//! Hermitian operators form a real inner-product space of dimension `n²`
//! under `Tr(A†B)`. Writing states in an orthonormal basis `B_i` as
//! `x_i = Tr(B_i ρ)`, every channel becomes a real matrix `M` with
//! `x(E(ρ)) = M·x(ρ)`, and the acceptance probability is linear in `x`.
//! The GFA reads `u = x(ρ₀)ᵀ`, `A_σ = M_σᵀ`, `v_i = Tr(P_acc B_i)`.

use crate::error::{Error, Result};
use crate::linalg::complex::trace_product;
use crate::linalg::{gell_mann_basis, ComplexMatrix, HermitianBasis, Matrix};
use crate::models::{Channel, Gfa, Gqfa, Validate};

/// Imaginary parts of basis coordinates above this indicate non-Hermitian
/// input or a broken basis.
pub const IMAG_TOL: f64 = 1e-10;

/// Everything derived from a GQFA on the way to its GFA.
#[derive(Debug, Clone)]
pub struct LinearizationContext {
    pub basis: HermitianBasis,
    /// Channel matrix per symbol, in alphabet order.
    pub channel_matrices: Vec<Matrix<f64>>,
    pub initial: Vec<f64>,
    pub fin: Vec<f64>,
}

/// Coordinates `Tr(B_i ρ)` of a Hermitian operator.
pub fn coords(rho: &ComplexMatrix, basis: &HermitianBasis) -> Result<Vec<f64>> {
    let n = basis.dim();
    if rho.dims() != (n, n) {
        return Err(Error::Dimension(format!(
            "{}x{} operator against a basis on C^{n}",
            rho.rows(),
            rho.cols()
        )));
    }
    let residual = rho.hermitian_residual();
    if residual > IMAG_TOL {
        return Err(Error::NotHermitian { residual });
    }
    coords_unchecked(rho, basis)
}

fn coords_unchecked(x: &ComplexMatrix, basis: &HermitianBasis) -> Result<Vec<f64>> {
    basis
        .elements()
        .iter()
        .map(|b| {
            let z = trace_product(b, x)?;
            if z.im.abs() > IMAG_TOL {
                return Err(Error::Other(format!(
                    "basis coordinate has imaginary part {:.3e}",
                    z.im
                )));
            }
            Ok(z.re)
        })
        .collect()
}

/// `Σ x_i B_i`.
pub fn from_coords(x: &[f64], basis: &HermitianBasis) -> Result<ComplexMatrix> {
    if x.len() != basis.len() {
        return Err(Error::Dimension(format!(
            "{} coordinates for a basis of {} elements",
            x.len(),
            basis.len()
        )));
    }
    let n = basis.dim();
    let mut out = ComplexMatrix::zeros(n, n);
    for (xi, b) in x.iter().zip(basis.elements()) {
        out = out.try_add(&b.scale_real(*xi))?;
    }
    Ok(out)
}

/// Real matrix of `channel` in basis coordinates: column `j` holds
/// `coords(E(B_j))`.
pub fn channel_matrix(channel: &Channel, basis: &HermitianBasis) -> Result<Matrix<f64>> {
    if channel.dim() != basis.dim() {
        return Err(Error::Dimension(format!(
            "channel on C^{} against a basis on C^{}",
            channel.dim(),
            basis.dim()
        )));
    }
    let d = basis.len();
    let mut m = Matrix::zeros(d, d);
    for (j, bj) in basis.elements().iter().enumerate() {
        let image = channel.apply(bj)?;
        for (i, xi) in coords_unchecked(&image, basis)?.into_iter().enumerate() {
            m[(i, j)] = xi;
        }
    }
    Ok(m)
}

impl LinearizationContext {
    pub fn new(q: &Gqfa) -> Result<Self> {
        q.validate().into_result()?;
        let basis = gell_mann_basis(q.dim(), false)?;
        let channel_matrices = q
            .channels
            .iter()
            .map(|ch| channel_matrix(ch, &basis))
            .collect::<Result<_>>()?;
        let initial = coords(&q.rho0, &basis)?;
        let fin = coords(&q.accept, &basis)?;
        Ok(Self {
            basis,
            channel_matrices,
            initial,
            fin,
        })
    }

    pub fn to_gfa(&self, q: &Gqfa) -> Result<Gfa<f64>> {
        Gfa::new(
            q.alphabet.clone(),
            self.initial.clone(),
            self.channel_matrices.iter().map(Matrix::transpose).collect(),
            self.fin.clone(),
            q.cutpoint,
        )
    }
}

/// `n²`-state GFA with the same word function and cutpoint as `q`.
pub fn qfa_to_gfa(q: &Gqfa) -> Result<Gfa<f64>> {
    LinearizationContext::new(q)?.to_gfa(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Automaton;
    use crate::random::{random_channel, random_density, random_gqfa, random_hermitian};
    use crate::verify::enumerate_words;
    use rand::SeedableRng;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn rng(seed: u64) -> rand::rngs::StdRng {
        rand::rngs::StdRng::seed_from_u64(seed)
    }

    #[test]
    fn maximally_mixed_qubit() {
        let basis = gell_mann_basis(2, false).unwrap();
        let x = coords(&ComplexMatrix::identity(2).scale_real(0.5), &basis).unwrap();
        let want = [FRAC_1_SQRT_2, 0.0, 0.0, 0.0];
        for (a, b) in x.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn first_basis_state() {
        let basis = gell_mann_basis(2, false).unwrap();
        let x = coords(&ComplexMatrix::unit(2, 0, 0), &basis).unwrap();
        let want = [FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2];
        for (a, b) in x.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn coordinates_reconstruct() {
        let mut r = rng(1);
        for n in 2..=4 {
            let basis = gell_mann_basis(n, false).unwrap();
            for _ in 0..5 {
                let h = random_hermitian(&mut r, n);
                let back = from_coords(&coords(&h, &basis).unwrap(), &basis).unwrap();
                assert!(back.max_abs_diff(&h).unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn coords_errors() {
        let basis = gell_mann_basis(2, false).unwrap();
        assert!(matches!(
            coords(&ComplexMatrix::unit(2, 0, 1), &basis),
            Err(Error::NotHermitian { .. })
        ));
        assert!(coords(&ComplexMatrix::identity(3), &basis).is_err());
        assert!(channel_matrix(&Channel::identity(3), &basis).is_err());
    }

    #[test]
    fn identity_channel_matrix() {
        let basis = gell_mann_basis(3, false).unwrap();
        let m = channel_matrix(&Channel::identity(3), &basis).unwrap();
        let id = Matrix::<f64>::identity(9);
        for (a, b) in m.iter().zip(id.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn replacement_channel_matrix_has_trace_structure() {
        // Φ(X) = Tr(X)·σ, with σ a fixed density matrix
        let mut r = rng(2);
        let n = 2;
        let sigma = random_density(&mut r, n);
        let pairs = crate::linalg::spectral_decompose(&sigma).unwrap();
        let mut kraus = Vec::new();
        for p in &pairs {
            for j in 0..n {
                let mut ej = vec![num_complex::Complex64::new(0.0, 0.0); n];
                ej[j] = num_complex::Complex64::new(1.0, 0.0);
                kraus.push(ComplexMatrix::outer(&p.vector, &ej).scale_real(p.value.max(0.0).sqrt()));
            }
        }
        let ch = Channel::new(kraus).unwrap();
        let basis = gell_mann_basis(n, false).unwrap();
        let m = channel_matrix(&ch, &basis).unwrap();
        let xs = coords(&sigma, &basis).unwrap();
        for (j, bj) in basis.elements().iter().enumerate() {
            let tr = bj.trace().re;
            for i in 0..basis.len() {
                assert!((m[(i, j)] - tr * xs[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn channel_matrix_tracks_random_states() {
        let mut r = rng(3);
        for n in 2..=3 {
            let basis = gell_mann_basis(n, false).unwrap();
            let ch = random_channel(&mut r, n, 2);
            let m = channel_matrix(&ch, &basis).unwrap();
            let rho = random_density(&mut r, n);
            let lhs = coords(&ch.apply(&rho).unwrap(), &basis).unwrap();
            let rhs = m.right_mul(&coords(&rho, &basis).unwrap()).unwrap();
            let err = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(err < 1e-9);
        }
    }

    #[test]
    fn composition_is_matrix_product() {
        let mut r = rng(4);
        for n in 2..=3 {
            let basis = gell_mann_basis(n, false).unwrap();
            let e = random_channel(&mut r, n, 2);
            let f = random_channel(&mut r, n, 3);
            let fe = channel_matrix(&e.then(&f).unwrap(), &basis).unwrap();
            let prod = channel_matrix(&f, &basis)
                .unwrap()
                .matmul(&channel_matrix(&e, &basis).unwrap())
                .unwrap();
            let err = fe.iter().zip(prod.iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(err < 1e-9);
        }
    }

    #[test]
    fn identity_channels_give_constant_gfa() {
        let q = Gqfa::new(
            crate::models::Alphabet::new(["a"]).unwrap(),
            ComplexMatrix::identity(2).scale_real(0.5),
            vec![Channel::identity(2)],
            ComplexMatrix::unit(2, 0, 0),
            0.25,
        )
        .unwrap();
        let g = qfa_to_gfa(&q).unwrap();
        for w in enumerate_words(1, 4) {
            assert!((g.evaluate(&w).unwrap() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn random_machine_agreement() {
        let mut r = rng(5);
        let q = random_gqfa(&mut r, 3, 2);
        let g = qfa_to_gfa(&q).unwrap();
        assert_eq!(g.states(), 9);
        assert_eq!(g.cutpoint, q.cutpoint);
        let mut worst: f64 = 0.0;
        for w in enumerate_words(2, 4) {
            worst = worst.max((g.evaluate(&w).unwrap() - q.evaluate(&w).unwrap()).abs());
        }
        assert!(worst < 1e-9, "{worst}");
    }
}
