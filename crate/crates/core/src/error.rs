use thiserror::Error;

/// Errors produced by constructions and verifiers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic must be 0 or an odd prime, got {0}")]
    InvalidCharacteristic(u64),
    #[error("inversion of zero")]
    ZeroInversion,
    #[error("cannot parse scalar {0:?}")]
    ScalarParse(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported field for this operation: {0}")]
    UnsupportedField(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("identity check failed: {0}")]
    IdentityFailure(String),
    #[error("inconsistent grading: {0}")]
    Grading(String),
    #[error("irreducibility test inconclusive after {0} attempts")]
    Inconclusive(u64),
    #[error("module decomposition failure: {0}")]
    Decomposition(String),
    #[error("malformed algebra file: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
