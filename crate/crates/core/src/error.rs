use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("search too large: {what} needs about {estimate} steps, guard is {guard}")]
    GuardExceeded { what: String, estimate: f64, guard: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}

/// Fails with `GuardExceeded` when `estimate > guard`.
pub fn check_guard(what: &str, estimate: f64, guard: f64) -> Result<()> {
    if estimate > guard {
        Err(Error::GuardExceeded { what: what.to_string(), estimate, guard })
    } else {
        Ok(())
    }
}
