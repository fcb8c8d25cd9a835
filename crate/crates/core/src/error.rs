use thiserror::Error;

/// Errors raised by the exact and numeric routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} requires a positive index, got 0")]
    ZeroIndex { what: &'static str },

    #[error("non-unit series: constant term is zero")]
    NonUnitSeries,

    #[error("series diverges: leading argument s_1 = {0} must be at least 2")]
    Divergent(u32),

    #[error("argument list is empty")]
    EmptyArguments,

    #[error("arguments must be positive, got {0}")]
    NonPositiveArgument(u32),

    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
