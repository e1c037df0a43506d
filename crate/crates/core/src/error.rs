use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix dimension {0} exceeds the configured maximum {1}")]
    SizeExceeded(usize, usize),

    #[error("site index {site} out of range 1..={n}")]
    SiteOutOfRange { site: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not Hermitian (residual {residual:.3e} exceeds {tolerance:.3e})")]
    NonHermitian { residual: f64, tolerance: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("eigendecomposition failed: {0}")]
    EigenFailure(String),

    #[error("temperature must be positive (got {0}); use ground_state for T = 0")]
    NonPositiveTemperature(f64),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
