use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what}: dimension mismatch {left:?} vs {right:?}")]
    DimensionMismatch {
        what: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    /// Column `column` of the right-hand side is outside the column space.
    #[error("linear system has no solution (right-hand column {column})")]
    NoSolution { column: usize },

    /// `h1 * h2^T != 0`; `c` preshared pairs are needed.
    #[error("matrices are not dual-containing: gfrank(H1 H2^T) = {c}")]
    NotDualContaining { c: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("code too large for exhaustive search: {n} qubits (limit {limit})")]
    TooLarge { n: usize, limit: usize },

    #[error("generator rows are linearly dependent ({which}: rank {rank} < {rows})")]
    RankDeficient {
        which: &'static str,
        rank: usize,
        rows: usize,
    },

    #[error("bad block partition: {0}")]
    BadPartition(String),

    #[error("Z stage unsolvable in block {block}: no in-block augmentation reaches the targets")]
    Unsolvable { block: usize },

    #[error("invalid gate {gate}: {reason}")]
    InvalidGate { gate: String, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("verification failed: {criterion}: {detail}")]
    Verification { criterion: String, detail: String },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
