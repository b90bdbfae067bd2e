use std::f64::consts::FRAC_1_SQRT_2;

use super::complex::{c, hs_inner, real, ComplexMatrix};
use crate::error::{Error, Result};

/// Hilbert–Schmidt orthonormal basis of Hermitian operators on `C^n`.
///
/// Full bases have `n²` elements with `I/√n` first; traceless bases have the
/// remaining `n²−1`. Enumeration order after the identity element is fixed:
/// symmetric pairs `(j, k)`, `j < k` in lexicographic order, then the
/// antisymmetric pairs in the same order, then the diagonal elements.
#[derive(Debug, Clone)]
pub struct HermitianBasis {
    dim: usize,
    elements: Vec<ComplexMatrix>,
    traceless_only: bool,
}

impl HermitianBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn traceless_only(&self) -> bool {
        self.traceless_only
    }

    /// Largest deviation from Hermiticity, orthonormality and (if traceless)
    /// zero trace across the basis.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for (i, a) in self.elements.iter().enumerate() {
            r = r.max(a.hermitian_residual());
            if self.traceless_only {
                r = r.max(a.trace().norm());
            }
            for (j, b) in self.elements.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                let got = hs_inner(a, b).expect("basis elements share one shape");
                r = r.max((got - real(want)).norm());
            }
        }
        r
    }
}

/// Generalized Gell-Mann basis, normalised to unit Hilbert–Schmidt norm.
pub fn gell_mann_basis(n: usize, traceless_only: bool) -> Result<HermitianBasis> {
    if n < 2 {
        return Err(Error::BasisDimension(n));
    }
    let mut elements = Vec::with_capacity(n * n);
    if !traceless_only {
        elements.push(ComplexMatrix::identity(n).scale_real(1.0 / (n as f64).sqrt()));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (j + 1..n).map(move |k| (j, k)))
        .collect();
    for &(j, k) in &pairs {
        let mut m = ComplexMatrix::zeros(n, n);
        m[(j, k)] = real(FRAC_1_SQRT_2);
        m[(k, j)] = real(FRAC_1_SQRT_2);
        elements.push(m);
    }
    for &(j, k) in &pairs {
        let mut m = ComplexMatrix::zeros(n, n);
        m[(j, k)] = c(0.0, -FRAC_1_SQRT_2);
        m[(k, j)] = c(0.0, FRAC_1_SQRT_2);
        elements.push(m);
    }
    for l in 1..n {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut m = ComplexMatrix::zeros(n, n);
        for j in 0..l {
            m[(j, j)] = real(norm);
        }
        m[(l, l)] = real(-(l as f64) * norm);
        elements.push(m);
    }
    Ok(HermitianBasis {
        dim: n,
        elements,
        traceless_only,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::complex::pauli;

    #[test]
    fn qubit_traceless_is_scaled_pauli() {
        let b = gell_mann_basis(2, true).unwrap();
        assert_eq!(b.len(), 3);
        let expect = [pauli::x(), pauli::y(), pauli::z()];
        for (got, want) in b.elements().iter().zip(expect) {
            let want = want.scale_real(FRAC_1_SQRT_2);
            assert!(got.max_abs_diff(&want).unwrap() < 1e-15);
        }
    }

    #[test]
    fn qubit_full_starts_with_identity() {
        let b = gell_mann_basis(2, false).unwrap();
        assert_eq!(b.len(), 4);
        let id = ComplexMatrix::identity(2).scale_real(FRAC_1_SQRT_2);
        assert!(b.elements()[0].max_abs_diff(&id).unwrap() < 1e-15);
    }

    #[test]
    fn orthonormal_for_small_dims() {
        for n in 2..=4 {
            for traceless in [true, false] {
                let b = gell_mann_basis(n, traceless).unwrap();
                let want = if traceless { n * n - 1 } else { n * n };
                assert_eq!(b.len(), want);
                assert!(b.orthonormality_residual() < 1e-12, "n={n}");
            }
        }
    }

    #[test]
    fn rejects_dimension_one() {
        assert_eq!(gell_mann_basis(1, true).unwrap_err(), Error::BasisDimension(1));
    }
}
