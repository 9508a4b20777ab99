use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex count {0} outside the supported range 1..=16")]
    VertexCount(usize),

    #[error("edge vertices must be three distinct integers, got {0:?}")]
    DegenerateEdge([usize; 3]),

    #[error("graphs have different vertex counts ({0} vs {1})")]
    SizeMismatch(usize, usize),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("construction {tag} is not defined for n = {n}")]
    ConstructionRange { tag: String, n: usize },

    #[error("unknown name {0:?}")]
    UnknownName(String),

    #[error("registry: {0}")]
    Registry(String),

    #[error("invalid search specification: {0}")]
    InvalidSpec(String),

    #[error("prover: {0}")]
    Prover(String),

    #[error("certificate rejected: {0}")]
    Certificate(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
