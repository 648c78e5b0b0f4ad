use thiserror::Error;

/// Errors produced by the geometric and quantum checks in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("phase-space dimension must be even and positive, got {0}")]
    OddDimension(usize),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("matrix is singular or too ill-conditioned to invert")]
    Singular,

    #[error("non-finite value in input")]
    NonFinite,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("grid is not uniform")]
    NonUniformGrid,

    #[error("grid length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("samples do not decay at the grid edges (edge/max ratio {ratio:e})")]
    InsufficientDecay { ratio: f64 },

    #[error("factorization residual {residual:e} exceeds {limit:e}")]
    ResidualTooLarge { residual: f64, limit: f64 },

    #[error("not a quantum covariance matrix at hbar = {hbar}")]
    NotQuantumCovariance { hbar: f64 },

    #[error("vertex enumeration budget exceeded ({combinations} combinations)")]
    EnumerationBudget { combinations: u128 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
