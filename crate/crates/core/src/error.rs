use thiserror::Error;

/// Errors produced by the transform library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("signal must contain at least one sample")]
    EmptySignal,

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("size {n} is below the minimum of {min}")]
    SizeTooSmall { n: usize, min: usize },

    #[error("matrix shape mismatch: expected {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    ShapeMismatch {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("commuting matrix residual {residual:e} exceeds {tolerance:e}")]
    CommutationFailure { residual: f64, tolerance: f64 },

    #[error("eigenbasis is degenerate: orthonormality residual {residual:e}")]
    DegenerateBasis { residual: f64 },

    #[error("eigenvector {column} does not match its eigenvalue index (residual {residual:e})")]
    EigenMismatch { column: usize, residual: f64 },

    #[error("eigensolver did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("eigenvalue index vector does not match size {n}")]
    InvalidIndexVector { n: usize },

    #[error("halving requires an even number of orders; odd length {n} needs zero padding")]
    OddWithoutPad { n: usize },

    #[error("signal is identically zero")]
    ZeroSignal,

    #[error("non-finite fractional order")]
    InvalidOrder,

    #[error("invalid basis cache: {0}")]
    InvalidCache(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
