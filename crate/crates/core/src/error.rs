use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("group error: {0}")]
    Group(String),

    #[error("lattice error: {0}")]
    Lattice(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("audit failure: {0}")]
    Audit(String),

    #[error("scenario error at {path}: {message}")]
    Scenario { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
