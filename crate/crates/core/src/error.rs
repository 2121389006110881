use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The integrand is not in the requested weighted L^p space.
    #[error("not in space: {0}")]
    NotInSpace(String),

    /// A hypothesis of the result being checked does not hold for the configuration.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("eigen solver failed to converge for order {order}")]
    Convergence { order: usize },

    #[error("evaluation failed at v = {at}: {reason}")]
    Evaluation { at: f64, reason: String },

    #[error("index out of range: {0}")]
    Index(String),

    #[error("empty input")]
    EmptyInput,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
