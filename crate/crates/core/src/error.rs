use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} = {value} exceeds the configured cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: String,
        cap: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("insufficient bits: have {have}, need {need}")]
    InsufficientBits { have: usize, need: usize },

    #[error("every coefficient chunk is zero, so K_b = 0 and the weights are undefined")]
    AllZeroCoefficients,

    #[error("malformed character {found:?} at byte offset {offset}")]
    MalformedCharacter { offset: usize, found: char },

    #[error("bit file contains no bits")]
    EmptyBitFile,

    #[error("schema violation in field `{field}`: {reason}")]
    SchemaViolation { field: String, reason: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid subsystem selection: {0}")]
    InvalidSubsystem(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("unsupported coefficient policy: {0}")]
    PolicyUnsupported(String),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    EigenNoConvergence { sweeps: usize, residual: f64 },

    #[error("not a valid density matrix: {0}")]
    InvalidState(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn schema(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::SchemaViolation {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn cap(what: &'static str, value: impl ToString, cap: impl ToString) -> Self {
        Error::CapExceeded {
            what,
            value: value.to_string(),
            cap: cap.to_string(),
        }
    }
}
