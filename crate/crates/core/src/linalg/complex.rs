use num_complex::Complex64;

use super::Matrix;
use crate::error::{Error, Result};

pub type ComplexMatrix = Matrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn real(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl ComplexMatrix {
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols(), self.rows(), |i, j| self[(j, i)].conj())
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        let d = self.try_sub(other)?;
        Ok(d.iter().map(|z| z.norm()).fold(0.0, f64::max))
    }

    /// `max |A − A†|`; zero for exactly Hermitian input.
    pub fn hermitian_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows();
        let mut r: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                r = r.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        r
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_residual() <= tol
    }

    pub fn frobenius(&self) -> f64 {
        self.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    /// `|a⟩⟨b|` for column vectors `a`, `b`.
    pub fn outer(a: &[Complex64], b: &[Complex64]) -> Self {
        Self::from_fn(a.len(), b.len(), |i, j| a[i] * b[j].conj())
    }

    /// `|i⟩⟨j|` in dimension `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == i && c == j { real(1.0) } else { real(0.0) })
    }

    pub fn from_real(m: &Matrix<f64>) -> Self {
        m.map(|&x| real(x))
    }

    /// `A X A†`.
    pub fn sandwich(&self, x: &Self) -> Result<Self> {
        self.matmul(x)?.matmul(&self.adjoint())
    }
}

/// Hilbert–Schmidt inner product `Tr(A† B)`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Complex64> {
    if !a.is_square() || a.dims() != b.dims() {
        return Err(Error::Dimension(format!(
            "Hilbert-Schmidt product of {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum())
}

/// `Tr(A B)` without forming the product.
pub fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Complex64> {
    if a.cols() != b.rows() || a.rows() != b.cols() {
        return Err(Error::Dimension(format!(
            "trace of product {}x{} · {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let mut t = Complex64::new(0.0, 0.0);
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            t += a[(i, k)] * b[(k, i)];
        }
    }
    Ok(t)
}

/// Pauli matrices, handy in tests and examples.
pub mod pauli {
    use super::*;

    pub fn x() -> ComplexMatrix {
        Matrix::from_vec(2, 2, vec![real(0.0), real(1.0), real(1.0), real(0.0)]).unwrap()
    }

    pub fn y() -> ComplexMatrix {
        Matrix::from_vec(2, 2, vec![real(0.0), c(0.0, -1.0), c(0.0, 1.0), real(0.0)]).unwrap()
    }

    pub fn z() -> ComplexMatrix {
        Matrix::from_vec(2, 2, vec![real(1.0), real(0.0), real(0.0), real(-1.0)]).unwrap()
    }
}
