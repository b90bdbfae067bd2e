//! Hermitian eigen-decomposition by cyclic complex Jacobi rotations.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then applies the classical real Jacobi rotation that annihilates
//! it. Sweeps continue until the off-diagonal Frobenius mass drops below
//! `1e-14` (relative to the matrix norm when that exceeds one).

use num_complex::Complex64;

use super::complex::ComplexMatrix;
use crate::error::{Error, Result};

/// Hermiticity tolerance for eigensolver input.
pub const HERMITIAN_TOL: f64 = 1e-10;

const OFF_DIAGONAL_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<Complex64>,
}

/// Eigenpairs of a Hermitian matrix, eigenvalues in descending order.
pub fn spectral_decompose(h: &ComplexMatrix) -> Result<Vec<EigenPair>> {
    if !h.is_square() {
        return Err(Error::Dimension(format!(
            "eigen-decomposition of a {}x{} matrix",
            h.rows(),
            h.cols()
        )));
    }
    let residual = h.hermitian_residual();
    if residual > HERMITIAN_TOL {
        return Err(Error::NotHermitian { residual });
    }
    let n = h.rows();
    // symmetrise so rounding in the input cannot bias the rotations
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let threshold = OFF_DIAGONAL_TOL * a.frobenius().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal(&a) < threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut pairs: Vec<EigenPair> = (0..n)
        .map(|i| EigenPair {
            value: a[(i, i)].re,
            vector: v.column(i),
        })
        .collect();
    pairs.sort_by(|x, y| y.value.total_cmp(&x.value));
    Ok(pairs)
}

fn off_diagonal(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let b = apq.norm();
    if b < f64::MIN_POSITIVE {
        return;
    }
    let phase = Complex64::from_polar(1.0, -apq.arg());
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * b);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let cs = 1.0 / (t * t + 1.0).sqrt();
    let sn = t * cs;

    // 2x2 block of the unitary U = D·G acting on coordinates (p, q)
    let u_pp = Complex64::new(cs, 0.0);
    let u_pq = Complex64::new(sn, 0.0);
    let u_qp = phase * -sn;
    let u_qq = phase * cs;

    let n = a.rows();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;

    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

/// `Σ λᵢ |ψᵢ⟩⟨ψᵢ|`.
pub fn reconstruct(pairs: &[EigenPair]) -> ComplexMatrix {
    let n = pairs.first().map_or(0, |p| p.vector.len());
    let mut out = ComplexMatrix::zeros(n, n);
    for pair in pairs {
        let term = ComplexMatrix::outer(&pair.vector, &pair.vector).scale_real(pair.value);
        out = out.try_add(&term).expect("eigenvectors share one dimension");
    }
    out
}

pub fn eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(spectral_decompose(h)?.into_iter().map(|p| p.value).collect())
}

/// Spectral norm of a Hermitian matrix, `max |λ|`.
pub fn operator_norm(h: &ComplexMatrix) -> Result<f64> {
    Ok(eigenvalues(h)?.into_iter().map(f64::abs).fold(0.0, f64::max))
}

/// Hermitian, trace one and no eigenvalue below `−tol`.
pub fn is_density(rho: &ComplexMatrix, tol: f64) -> bool {
    density_violation(rho, tol).is_none()
}

/// Describes why `rho` fails to be a density matrix, if it does.
pub fn density_violation(rho: &ComplexMatrix, tol: f64) -> Option<String> {
    if !rho.is_square() {
        return Some(format!("not square ({}x{})", rho.rows(), rho.cols()));
    }
    let herm = rho.hermitian_residual();
    if herm > tol {
        return Some(format!("not Hermitian (residual {herm:.3e})"));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
        return Some(format!("trace {tr} differs from 1 by {:.3e}", (tr - 1.0).norm()));
    }
    match eigenvalues(rho) {
        Ok(ev) => {
            let min = ev.last().copied().unwrap_or(0.0);
            (min < -tol).then(|| format!("negative eigenvalue {min:.3e}"))
        }
        Err(e) => Some(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::complex::{pauli, real};
    use crate::random::random_hermitian;
    use rand::SeedableRng;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    }

    #[test]
    fn diagonal_input() {
        let h = ComplexMatrix::diagonal(&[real(1.0), real(3.0)]);
        let pairs = spectral_decompose(&h).unwrap();
        assert_eq!(pairs[0].value, 3.0);
        assert_eq!(pairs[1].value, 1.0);
        assert!((pairs[0].vector[1].norm() - 1.0).abs() < 1e-15);
        assert!((pairs[1].vector[0].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pauli_x() {
        let pairs = spectral_decompose(&pauli::x()).unwrap();
        assert!((pairs[0].value - 1.0).abs() < 1e-14);
        assert!((pairs[1].value + 1.0).abs() < 1e-14);
        let plus = &pairs[0].vector;
        // (1, 1)/√2 up to global phase
        assert!((plus[0].norm() - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((plus[0] - plus[1]).norm() < 1e-12);
        let minus = &pairs[1].vector;
        assert!((minus[0] + minus[1]).norm() < 1e-12);
    }

    #[test]
    fn random_reconstruction_and_orthonormality() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for trial in 0..100 {
            let n = 1 + trial % 6;
            let h = random_hermitian(&mut rng, n);
            let pairs = spectral_decompose(&h).unwrap();
            let back = reconstruct(&pairs);
            assert!(h.max_abs_diff(&back).unwrap() < 1e-9, "trial {trial}");
            for i in 0..n {
                for j in 0..n {
                    let ip = inner(&pairs[i].vector, &pairs[j].vector);
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((ip - real(want)).norm() < 1e-9);
                }
            }
            assert!(pairs.windows(2).all(|w| w[0].value >= w[1].value));
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::unit(2, 0, 1);
        assert!(matches!(spectral_decompose(&m), Err(Error::NotHermitian { .. })));
        assert!(operator_norm(&m).is_err());
    }

    #[test]
    fn operator_norms() {
        assert!((operator_norm(&pauli::z()).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(operator_norm(&ComplexMatrix::zeros(3, 3)).unwrap(), 0.0);
        let n = operator_norm(&pauli::x().scale_real(FRAC_1_SQRT_2)).unwrap();
        assert!((n - 0.70711).abs() < 1e-5);
    }

    #[test]
    fn operator_norm_is_even() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for n in 1..6 {
            let h = random_hermitian(&mut rng, n);
            let a = operator_norm(&h).unwrap();
            let b = operator_norm(&h.neg()).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn density_predicate() {
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(is_density(&half, 1e-12));
        assert!(!is_density(&pauli::z(), 1e-12));
        let bad = half.try_add(&pauli::z().scale_real(0.6)).unwrap();
        assert!(!is_density(&bad, 1e-12));
        assert!(density_violation(&bad, 1e-12).unwrap().contains("negative"));
    }
}
