use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operation requires a nonzero code")]
    ZeroCode,

    #[error("operation requires a free code")]
    NotFree,

    #[error("length {n} exceeds the supported maximum {max}")]
    TooLong { n: usize, max: usize },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown symbol {0:?} (expected one of 0, k, t, z)")]
    UnknownSymbol(char),

    #[error("Construction {construction} requires {condition}")]
    Precondition {
        construction: &'static str,
        condition: &'static str,
    },

    #[error("Construction {construction}: hull-rank {actual} outside predicted {predicted:?}")]
    PredictionViolated {
        construction: &'static str,
        actual: usize,
        predicted: Vec<usize>,
    },

    #[error("{0}")]
    ConstructionInvariant(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parameters out of range: {0}")]
    OutOfRange(String),

    #[error("oracle consistency failure: {0}")]
    Oracle(String),
}

pub type Result<T> = std::result::Result<T, Error>;
