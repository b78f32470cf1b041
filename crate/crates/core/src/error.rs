use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("size bound exceeded: {0}")]
    SizeBound(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("scramble has no eggs; its order is undefined")]
    EmptyScramble,

    #[error("invalid scramble: {0}")]
    InvalidScramble(String),

    #[error("invalid tree-cut decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("not a subgraph: {0}")]
    NotSubgraph(String),

    #[error("search timed out with bounds [{lower}, {upper}]")]
    Timeout { lower: u32, upper: u32 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
