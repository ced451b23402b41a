use thiserror::Error;

/// Errors raised by the exact algebra and geometry routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("nominal degree {nominal} is below the total degree {actual}")]
    DegreeTooLow { nominal: u32, actual: u32 },

    #[error("series reciprocal needs constant term 1, found {0}")]
    NonUnitConstant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("point {0} is not a vertex of the convex hull")]
    RedundantPoint(usize),

    #[error("origin is not an interior point")]
    OriginNotInterior,

    #[error("coordinate denominator vanishes at the evaluation point")]
    DenominatorZero,

    #[error("kernel dimension {found}, expected {expected}")]
    KernelDimension { expected: usize, found: usize },

    #[error("polytope is not simple: {0}")]
    NotSimple(String),

    #[error("hyperplane arrangement is not simple")]
    NonSimpleArrangement,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("property violation: {0}")]
    Violation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
