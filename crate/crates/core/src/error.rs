use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex index {index} out of range for graph on {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("self-loop ({0}, {0}) is not allowed")]
    SelfLoop(usize),
    #[error("graph needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("oracle supports 2 <= n <= {max}, got n = {n}")]
    OracleSize { n: usize, max: usize },
    #[error("distributions have mismatched supports ({0} vs {1} states)")]
    SupportMismatch(usize, usize),
    #[error("{0}")]
    Analysis(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
