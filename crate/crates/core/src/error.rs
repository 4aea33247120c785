use thiserror::Error;

/// Errors raised by the soft-number and soft-probability routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature gave up before reaching its tolerance.
    #[error("quadrature did not converge (estimate {estimate:e}, error {error:e})")]
    Convergence { estimate: f64, error: f64 },

    /// A fitted model has no usable spread.
    #[error("degenerate model: {0}")]
    Degenerate(String),

    /// Malformed text input.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
