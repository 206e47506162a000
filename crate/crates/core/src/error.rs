use thiserror::Error;

/// Errors raised by the numeric kernels and the experiments built on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid real spec at column {column}: {message}")]
    InvalidSpec { column: usize, message: String },

    #[error("value is rational: {0}")]
    Rational(String),

    #[error("insufficient coefficients: need a_{needed}, continued fraction provides {available}")]
    InsufficientCoefficients { needed: usize, available: usize },

    #[error("precision exhausted after {terms} terms")]
    PrecisionExhausted { terms: usize },

    #[error("rational point: {{r alpha}} cannot be separated from 0 at r = {r}")]
    RationalPoint { r: u64 },

    #[error("invalid digit string: {0}")]
    InvalidDigits(String),

    #[error("invalid index sequence: {0}")]
    InvalidIndices(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("discriminant too large to reduce to squarefree form ({bits} bits)")]
    DiscriminantTooLarge { bits: u64 },
}

impl Error {
    /// Failures caused by bad input rather than by the numerics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidSpec { .. }
                | Error::Rational(_)
                | Error::InsufficientCoefficients { .. }
                | Error::InvalidDigits(_)
                | Error::InvalidIndices(_)
                | Error::InvalidArgument(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
