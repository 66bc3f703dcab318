use thiserror::Error;

/// Errors surfaced by every module of the crate.
#[derive(Debug, Error)]
pub enum ShiftError {
    #[error("enumeration of {needed} items exceeds the configured cap of {cap}")]
    CapExceeded { needed: String, cap: u64 },
    #[error("the block language is empty at this window")]
    EmptyLanguage,
    #[error("no independence witness exists at this window")]
    NoWitness,
    #[error("argument outside its domain: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolated(String),
    #[error("row {row} of the adjacency matrix is all zeros")]
    DeadEnd { row: usize },
    #[error("irreducible class {class:?} has spectral radius above 1")]
    NotUnexpandable { class: Vec<usize> },
    #[error("the base shift has no infinite points")]
    EmptyBase,
    #[error("symbol {symbol} has no outgoing transition")]
    DeadSymbol { symbol: usize },
    #[error("base shift is not hereditary at length {length}")]
    NotHereditary { length: usize },
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("invalid vertex {0}")]
    InvalidVertex(String),
    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = ShiftError> = std::result::Result<T, E>;

impl ShiftError {
    pub(crate) fn cap(needed: impl ToString, cap: u64) -> Self {
        ShiftError::CapExceeded {
            needed: needed.to_string(),
            cap,
        }
    }
}
