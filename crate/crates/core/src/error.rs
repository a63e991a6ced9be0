use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid rotation system: {0}")]
    InvalidRotationSystem(String),
    #[error("invalid drawing: {0}")]
    InvalidDrawing(String),
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("invalid k: {0}")]
    InvalidK(String),
    #[error("budget too small: k = {k} < s = {s}")]
    BudgetTooSmall { k: usize, s: usize },
    #[error("drawing is not bridgeless")]
    NotBridgeless,
    #[error("drawing is disconnected")]
    Disconnected,
    #[error("graph is not planar")]
    NotPlanar,
    #[error("embedding not unique: {0}")]
    EmbeddingNotUnique(String),
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("signature table at node {node} exceeds {limit} entries")]
    TableBudgetExceeded { node: usize, limit: usize },
    #[error("reconstruction gap: {0}")]
    ReconstructionGap(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("unknown {kind} strategy '{name}'")]
    UnknownStrategy { kind: &'static str, name: String },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}
