use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid presentation: {0}")]
    Presentation(String),

    #[error("carrier mismatch: expected {expected}, found {found}")]
    CarrierMismatch { expected: String, found: String },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("odd label {0} occurs more than once")]
    OddRepeated(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("non-integral coefficient: {0}")]
    NonIntegral(String),

    #[error("invalid quiver: {0}")]
    Quiver(String),

    #[error("table format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable tag used in CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Presentation(_) => "presentation",
            Error::CarrierMismatch { .. } => "carrier_mismatch",
            Error::DegreeMismatch { .. } => "degree_mismatch",
            Error::OddRepeated(_) => "odd_repeated",
            Error::Precondition(_) => "precondition",
            Error::Verification(_) => "theorem_violation",
            Error::NonIntegral(_) => "integrality",
            Error::Quiver(_) => "quiver",
            Error::Format(_) => "format",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
