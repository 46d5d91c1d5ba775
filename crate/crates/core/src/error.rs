use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomial ring mismatch: {0}")]
    RingMismatch(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("unsupported in characteristic {characteristic}: {what}")]
    Characteristic { characteristic: u64, what: String },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("unstable point: {0}")]
    Unstable(String),
    #[error("generation check failed: {0}")]
    Generation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
