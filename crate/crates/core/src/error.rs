use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An edge-list or JSON document could not be read.
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Input that is well formed but describes an object we do not accept
    /// (self-loops, negative indices, duplicate edges, open complexes).
    #[error("rejected input: {0}")]
    Rejected(String),

    /// A precondition on an argument was violated (index out of range,
    /// length mismatch, non-integer matrix, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A named configuration item is unknown or malformed.
    #[error("configuration error: {0}")]
    Config(String),

    /// The request would exceed a configured resource cap.
    #[error("resource limit: {0}")]
    Resource(String),

    /// An internal contract on a computed object does not hold.
    #[error("contract violation: {0}")]
    Contract(String),

    /// The operation needs a connected graph.
    #[error("graph is disconnected; components: {components:?}")]
    Disconnected { components: Vec<Vec<usize>> },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
