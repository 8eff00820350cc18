use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid degree {p} for dimension {n}")]
    InvalidDegree { p: usize, n: usize },

    #[error("dimension {0} exceeds the supported maximum of 64")]
    DimensionTooLarge(usize),

    #[error("invalid multi-index {entries:?} in dimension {n}: {reason}")]
    InvalidMultiIndex {
        entries: Vec<usize>,
        n: usize,
        reason: &'static str,
    },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("form is not of pure bidegree")]
    MixedBidegree,

    #[error("wrong bidegree: expected {expected:?}, found {found:?}")]
    WrongBidegree {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("expected {expected} covectors, got {found}")]
    WrongCovectorCount { expected: usize, found: usize },

    #[error("form is not real")]
    NotReal,

    #[error("matrix is not hermitian at ({row}, {col})")]
    NotHermitian { row: usize, col: usize },

    #[error("matrix has shape {rows}x{cols}, expected {expected}x{expected}")]
    BadShape {
        rows: usize,
        cols: usize,
        expected: usize,
    },

    #[error("matrix is singular")]
    Singular,

    #[error("pairing has nonvanishing imaginary part {0}")]
    ImaginaryPairing(f64),

    #[error("operation requires p = 2, got p = {0}")]
    RequiresP2(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("point is off the quadric (residual {0})")]
    OffQuadric(f64),

    #[error("no basis pair with nonzero pairing found after {0} attempts")]
    SearchFailure(usize),

    #[error("internal invariant broken: {0}")]
    Logic(String),

    #[error("theorem check failed: {0}")]
    TheoremViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
