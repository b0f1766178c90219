use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: loop at vertex {vertex}")]
    Loop { line: usize, vertex: usize },
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("graph is not subcubic: vertex {vertex} has degree {degree}")]
    NotSubcubic { vertex: usize, degree: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("edge id {0} is out of range")]
    EdgeOutOfRange(usize),
    #[error("invalid matching pair: {0}")]
    InvalidPair(String),
    #[error("exhaustive search refused: {edges} edges exceeds the limit of {limit}")]
    TooLarge { edges: usize, limit: usize },
    #[error("invalid packing sequence: {0}")]
    Sequence(String),
    #[error("invalid coloring: {0}")]
    Coloring(String),
    #[error("leftover graph has a non-basic component ({0}); charges are undefined")]
    NonBasicComponent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
