use thiserror::Error;

/// Errors raised by the numerical layers and the experiment runner.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("support exceeded cap of {cap} entries (reached {reached})")]
    SupportExplosion { cap: usize, reached: usize },

    #[error("dimension {dim} exceeds dense-solver cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("spec validation error: {0}")]
    Validation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn shape(expected: impl Into<String>, got: impl Into<String>) -> Self {
        Error::ShapeMismatch {
            expected: expected.into(),
            got: got.into(),
        }
    }
}
