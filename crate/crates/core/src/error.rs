use thiserror::Error;

/// Errors produced anywhere in the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not an associative algebra: associativity residual {residual:.3e} exceeds {tol:.1e}")]
    NotAnAlgebra { residual: f64, tol: f64 },
    #[error("algebra is not semisimple: trace form has minimal eigenvalue {min_eigenvalue:.3e}")]
    NonSemisimple { min_eigenvalue: f64 },
    #[error("block decomposition failed: {0}")]
    Decomposition(String),
    #[error("objects come from different backends or 0-cells: {0}")]
    BackendMismatch(String),
    #[error("truncation escape: product of internal labels {left} and {right} needs label {needed} beyond cutoff {cutoff}")]
    TruncationEscape { left: String, right: String, needed: String, cutoff: String },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("group law violated at {0}")]
    GroupLaw(String),
    #[error("representation {index} is not unitary (residual {residual:.3e})")]
    NonUnitary { index: usize, residual: f64 },
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("Q-system is not simple: bimodule endomorphisms have dimension {0}")]
    NotSimple(usize),
    #[error("isomorphism failure: {0}")]
    IsomorphismFailure(String),
    #[error("imprimitivity failure: {0}")]
    ImprimitivityFailure(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
