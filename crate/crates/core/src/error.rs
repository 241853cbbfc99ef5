use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("budget exceeded: estimate {estimate} > budget {budget} ({what})")]
    Budget { what: String, estimate: u128, budget: u128 },
    #[error("check failed: {0}")]
    Check(String),
    #[error("degree cap insufficient: {0}")]
    Cap(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
