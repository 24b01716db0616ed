use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector has no coordinates")]
    ZeroDimension,
    #[error("non-finite coordinate at index {0}")]
    NonFinite(usize),
    #[error("invalid set: {0}")]
    InvalidSet(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("no separating subspace found: {0}")]
    SeparationNotFound(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(GeomError::DimensionMismatch { expected, found })
    }
}
