use thiserror::Error;

/// Every failure the library can report. The CLI maps these onto exit codes.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precision too low: lambda-precision {given} cannot resolve the valuation, try at least {required}")]
    Precision { given: u32, required: u32 },
    #[error("level error: expected {expected}, found {found}")]
    Level { expected: String, found: String },
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("tameness violation: {0}")]
    Tameness(String),
    #[error("reducible cover: {0}")]
    ReducibleCover(String),
    #[error("constant field extension: {0}")]
    ConstantExtension(String),
    #[error("not weakly ramified: {0}")]
    NotWeaklyRamified(String),
    #[error("validation failed [{invariant}]: {detail}")]
    Validation { invariant: String, detail: String },
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("incomplete datum: {0}")]
    IncompleteDatum(String),
    #[error("integrality failure: {0}")]
    Integrality(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn validation(invariant: &str, detail: impl Into<String>) -> Error {
    Error::Validation {
        invariant: invariant.to_string(),
        detail: detail.into(),
    }
}
