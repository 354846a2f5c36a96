use thiserror::Error;

/// Errors raised by the computational kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands disagree on ambient variable count or form degree.
    #[error("shape error: {0}")]
    Shape(String),

    /// The input is outside the regime an operation is defined for
    /// (non-homogeneous input to a graded routine, non-integrable input
    /// to an extension routine, ...).
    #[error("mode error: {0}")]
    Mode(String),

    /// A numeric argument is out of range.
    #[error("domain error: {0}")]
    Domain(String),

    /// A projective form does not descend: coefficients are not homogeneous
    /// or the contraction with the Euler field is nonzero.
    #[error("Euler condition violated: {0}")]
    EulerViolation(String),

    /// Malformed polynomial text. `column` is 1-based.
    #[error("parse error at column {column}: {message} (near `{token}`)")]
    Parse {
        column: usize,
        token: String,
        message: String,
    },

    /// A prime-field computation hit a coefficient whose denominator
    /// vanishes modulo the prime.
    #[error("coefficient not representable modulo {0}")]
    BadReduction(u64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn shape<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Shape(msg.into()))
}
