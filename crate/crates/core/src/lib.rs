//! Simulation and conversion between generalized finite automata (GFA),
//! end-marker probabilistic finite automata (PFA) and measure-once mixed-state
//! quantum finite automata (GQFA) under strict cutpoint semantics.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: dense matrices over complex, float and exact rational
//!   scalars, a Jacobi Hermitian eigensolver and generalized Gell-Mann bases.
//! * [`models`]: the three automaton models with validation and evaluation.
//! * [`linearize`]: GQFA on `C^n` to an `n²`-state GFA.
//! * [`convert`]: `k`-state GFA to a `2k+6`-state PFA in exact arithmetic.
//! * [`witness`]: the prepare–test family that shatters `n²−1` states.
//! * [`verify`]: word enumeration, agreement checks and simplex shattering.

pub mod convert;
pub mod error;
pub mod linalg;
pub mod linearize;
pub mod models;
pub mod random;
pub mod scalar;
pub mod verify;
pub mod witness;

pub use error::{Error, Result};
pub use scalar::{Decision, Rational, Scalar, ScalarMode};
