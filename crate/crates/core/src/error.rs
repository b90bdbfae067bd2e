use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("basis dimension must be at least 2, got {0}")]
    BasisDimension(usize),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("symbol index {index} out of range for alphabet of size {size}")]
    SymbolIndex { index: usize, size: usize },

    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),

    #[error("invalid machine: {0}")]
    Invalid(String),

    #[error("value {value} lies within {band:e} of cutpoint {cutpoint}; strict decision is ambiguous")]
    Boundary { value: f64, cutpoint: f64, band: f64 },

    #[error("value is not finite: {0}")]
    NonFinite(f64),

    #[error("index {index} out of range 1..={max}")]
    IndexRange { index: usize, max: usize },

    #[error("sign vector has length {got}, expected {expected}")]
    SignLength { got: usize, expected: usize },

    #[error("scale constant breach: entry magnitude {entry} is not below C = {scale}")]
    ScaleBreach { entry: String, scale: String },

    #[error("alphabets differ: {0:?} vs {1:?}")]
    AlphabetMismatch(Vec<String>, Vec<String>),

    #[error("too many points for exhaustive shattering: {0} > {1}")]
    TooManyPoints(usize, usize),

    #[error("{0}")]
    Other(String),
}
