use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),

    #[error("segment parameters must satisfy p1 < p2 (got p1 = {p1}, p2 = {p2})")]
    UnorderedParameters { p1: f64, p2: f64 },

    #[error("block range [{i}, {j}] is out of bounds for a sequence of {len} blocks")]
    IndexOutOfBounds { i: usize, j: usize, len: usize },

    #[error("operation requires a non-empty block sequence")]
    EmptySequence,

    #[error("frequency of an empty block range is undefined")]
    EmptyRange,

    #[error("block sequence violates the increasing-fraction invariant at block {0}")]
    NotIncreasing(usize),

    #[error("block {0} has no entries")]
    EmptyBlock(usize),

    #[error("threshold is undefined for an empty window")]
    EmptyWindow,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid workload: {0}")]
    InvalidWorkload(String),

    #[error("malformed block dump at line {line}: {reason}")]
    MalformedDump { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
