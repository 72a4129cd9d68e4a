use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow in checked 128-bit integer ({0})")]
    Overflow(&'static str),

    #[error("vertex count {n} exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("edge {edge} has {found} vertices, expected {expected}")]
    WrongEdgeSize {
        edge: String,
        found: usize,
        expected: usize,
    },

    #[error("vertex {vertex} is outside [1, {n}]")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("operation is undefined on a hypergraph with {found} edges (needs at least {needed})")]
    TooFewEdges { found: usize, needed: usize },

    #[error("hypergraphs live on different vertex universes ({left} vs {right})")]
    UniverseMismatch { left: usize, right: usize },

    #[error("improper coloring: incident edges {first} and {second} share color {color}")]
    ImproperColoring { first: String, second: String, color: u32 },

    #[error("color vector has length {found}, expected {expected}")]
    ColorLengthMismatch { found: usize, expected: usize },

    #[error("duplicate root vertex {0}")]
    DuplicateRoot(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("instance space of {size} exceeds the cap of {cap}")]
    ScanTooLarge { size: u128, cap: u128 },

    #[error("entry {entry} expects {expected} instance(s)")]
    ArityMismatch {
        entry: &'static str,
        expected: &'static str,
    },

    #[error("entry {0} does not support this operation")]
    Unsupported(&'static str),

    #[error("unknown registry entry `{0}`")]
    UnknownEntry(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal self-check failed: {0}")]
    SelfCheck(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
