use thiserror::Error;

/// Errors raised by the library. Input validation failures and internal
/// inconsistencies are kept apart so callers can map them to exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("vertex {0} is not in the sequence")]
    VertexNotInSequence(usize),
    #[error("vertex {vertex} has no {direction} neighbour in the sequence")]
    Boundary { vertex: usize, direction: &'static str },
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid interval [{0},{1}]")]
    InvalidInterval(usize, usize),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("{0} is not an odd prime below 2^31")]
    InvalidPrime(u64),
    #[error("rank parameters are not realizable: {0}")]
    NotRealizable(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("permutation carries no blocking")]
    Unblocked,
    #[error("permutation is not of Z-type")]
    NotZType,
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("mismatched inputs: {0}")]
    Mismatch(String),
    #[error("{0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
