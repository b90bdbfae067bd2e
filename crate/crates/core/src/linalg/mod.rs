//! Dense linear algebra: generic matrices, complex Hermitian operators,
//! a Jacobi eigensolver and Gell-Mann operator bases.

pub mod basis;
pub mod complex;
pub mod matrix;
pub mod spectral;

pub use basis::{gell_mann_basis, HermitianBasis};
pub use complex::{hs_inner, ComplexMatrix};
pub use matrix::{dot, Matrix};
pub use spectral::{is_density, operator_norm, spectral_decompose, EigenPair};
