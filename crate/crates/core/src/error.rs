use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Jacobi parameters alpha={alpha}, beta={beta}: both must exceed -1")]
    InvalidFamily { alpha: f64, beta: f64 },
    #[error("argument {0} outside the open interval (-1, 1)")]
    Domain(f64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("non-finite value: {0}")]
    NonFinite(String),
    #[error("empty point set: {0}")]
    EmptySet(&'static str),
    #[error("length mismatch: {0} exact values vs {1} predictions")]
    LengthMismatch(usize, usize),
    #[error("exact solution has zero norm; relative error undefined")]
    ZeroNorm,
    #[error("optimizer diverged at iteration {iteration}: loss = {loss}")]
    Diverged { iteration: usize, loss: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("expression error: {0}")]
    Expression(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
