use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of the operation (zero vectors,
    /// empty point sets, all-zero amplitude lists).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Source or target points passed to a three-point construction coincide.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("numeric failure: {message} (residual {residual:e})")]
    Numeric { message: String, residual: f64 },

    /// Dense oracle refused to allocate.
    #[error("resource limit: {what} requires n <= {limit}, got n = {n}")]
    Resource {
        what: &'static str,
        limit: usize,
        n: usize,
    },

    /// A certificate or connecting operator failed its dense post-check.
    /// Signals a tolerance misconfiguration.
    #[error("internal inconsistency: {message} (residual {residual:e})")]
    Inconsistency { message: String, residual: f64 },

    #[error("malformed state file: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
