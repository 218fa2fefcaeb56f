use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singularity: {0}")]
    Singularity(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: ordinate {value} does not exceed the previous ordinate {previous}")]
    Monotonicity {
        line: usize,
        value: f64,
        previous: f64,
    },

    #[error("zero table is empty")]
    EmptyTable,

    #[error("insufficient samples: need at least {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("invalid character: {0}")]
    Character(String),

    #[error("series did not converge within {max_terms} terms at s = {s}")]
    Convergence { s: String, max_terms: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
