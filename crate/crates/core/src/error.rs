use thiserror::Error;

/// Errors surfaced by protocol construction and input parsing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("parameter out of range: {0}")]
    BadParameter(String),

    #[error("input too large for exhaustive check: n = {0} (limit {1})")]
    TooLarge(usize, usize),

    #[error("graph error: {0}")]
    Graph(String),

    #[error("not a partial cube")]
    NotPartialCube,

    #[error("semicube {0} is not convex; graph does not embed in l1")]
    NotL1Graph(String),

    #[error("embedding construction produced an inconsistent labeling")]
    InconsistentEmbedding,

    #[error("value {0} is not representable with {1} bits")]
    Unrepresentable(f64, u32),

    #[error("degenerate projection: image norm below tolerance")]
    DegenerateProjection,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
