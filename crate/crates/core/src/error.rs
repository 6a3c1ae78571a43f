use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("eigenvalue within {distance:.3e} of -1; subdivide the path or shrink the step")]
    BranchCut { distance: f64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("path resolution too coarse: {0}")]
    Resolution(String),

    #[error("loop winding {value} is not within {tolerance:e} of an integer")]
    NotALoop { value: f64, tolerance: f64 },

    #[error("parse error at {line}:{column} near `{token}`: {message}")]
    Parse {
        line: usize,
        column: usize,
        token: String,
        message: String,
    },

    #[error("invalid homomorphism expression: {0}")]
    InvalidHom(String),

    #[error("element is singular (smallest singular value {0:e})")]
    Singular(f64),

    #[error("no convergence: {0}")]
    Convergence(String),

    #[error("induced map is not well defined: {0}")]
    WellDefinedness(String),

    #[error("image of the circle is not scalar: {0}")]
    NotCircleValued(String),

    #[error("inconsistent result: {0}")]
    Inconsistency(String),

    #[error("no dual simplex map: {0}")]
    NoDual(String),

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
