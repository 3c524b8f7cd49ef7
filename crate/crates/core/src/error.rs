use thiserror::Error;

/// Errors raised by the library. CLI exit codes are derived from the variant.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph on {n} vertices exceeds the kernel cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("invalid label map: {0}")]
    InvalidLabels(String),
    #[error("malformed graph6 input: {0}")]
    Graph6(String),
    #[error("graph is not prime")]
    NotPrime,
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("substitution does not grow from its seed")]
    NonGrowingSubstitution,
    #[error("factor length {n} exceeds prefix length {len}")]
    FactorTooLong { n: usize, len: usize },
    #[error("pattern has {pattern} vertices but prefix length {len} admits at most {}", len + 1)]
    PatternTooLarge { pattern: usize, len: usize },
    #[error("vertex sets differ")]
    VertexSetMismatch,
    #[error("invalid linear order: {0}")]
    InvalidOrder(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
