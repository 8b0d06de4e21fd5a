use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed graph input. `line` is 1-based for edge lists; for JSON it is
    /// the line reported by the JSON parser (0 when unknown).
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An argument violated an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// The instance is larger than an exhaustive routine accepts.
    #[error("capacity exceeded: n = {n} exceeds the limit of {limit}")]
    Capacity { n: usize, limit: usize },

    /// The prior is accurate enough that no positive precision is profitable.
    #[error("trivial market: seller precision sqrt(m/gamma) - z0 = {z} is not positive")]
    TrivialMarket { z: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
