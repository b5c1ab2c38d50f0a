use thiserror::Error;

/// Errors reported by library operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown catalog graph `{0}`")]
    UnknownGraph(String),
    #[error("malformed projection: {0}")]
    MalformedProjection(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    /// A construction produced an object that failed its own re-verification.
    #[error("internal anomaly: {0}")]
    Anomaly(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
