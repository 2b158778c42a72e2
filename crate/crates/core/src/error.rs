use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("edge {u}-{v} has weight {w}; weights must be finite and strictly positive")]
    InvalidWeight { u: usize, v: usize, w: f64 },

    #[error("vertex id {id} out of range for n = {n}")]
    VertexOutOfRange { id: usize, n: usize },

    #[error("graph needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertex {0} has zero degree")]
    ZeroDegree(usize),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("no connected graph after {0} attempts; relax the parameters")]
    RetryBudgetExhausted(usize),

    #[error("matrix is not symmetric: |a[{i},{j}] - a[{j},{i}]| = {diff:e}")]
    NotSymmetric { i: usize, j: usize, diff: f64 },

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("eigenvalue {value} outside the admissible interval [{lo}, {hi}]")]
    EigenvalueOutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("spectral scale must be positive, got {0}")]
    NonPositiveScale(f64),

    #[error("dimension {n} exceeds the cap {cap}")]
    DimensionCap { n: usize, cap: usize },

    #[error("order search exceeded the cap P+Q = {0}")]
    SearchCapExceeded(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
