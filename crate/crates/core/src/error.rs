use thiserror::Error;

#[derive(Debug, Error)]
pub enum WehrlError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("descriptor mismatch: {0}")]
    DescriptorMismatch(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {dim} exceeds the dense-matrix limit {limit} (set WEHRL_DENSE_LIMIT to raise it)")]
    DenseLimitExceeded { dim: usize, limit: usize },

    #[error("vector is not normalized: |norm - 1| = {0:e}")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian: max |M - M^H| = {0:e}")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite: smallest eigenvalue {0:e}")]
    NotPositive(f64),

    #[error("density matrix trace is {0}, expected 1")]
    BadTrace(f64),

    #[error("not a vacuum frame: {0}")]
    NotVacuumFrame(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, WehrlError>;
