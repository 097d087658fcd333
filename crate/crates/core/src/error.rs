use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported field GF({0}): modulus must be a prime between 2 and 97")]
    UnsupportedField(u32),

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch { context: &'static str, expected: usize, found: usize },

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("{resource} needs {required} items, cap is {limit}")]
    CapExceeded { resource: &'static str, limit: u64, required: u64 },

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("labels do not span a two-sided ideal: {0}")]
    NotAnIdeal(String),

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("modules live over different algebras")]
    MixedAlgebras,

    #[error("subspace is not closed under the algebra action")]
    NotASubmodule,

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
