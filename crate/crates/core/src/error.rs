use thiserror::Error;

/// Errors shared across the solver library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("edge {index} ({u}, {v}): vertex out of range for graph on {n} vertices")]
    VertexOutOfRange { index: usize, u: usize, v: usize, n: usize },

    #[error("edge {index} ({u}, {u}): self-loop")]
    SelfLoop { index: usize, u: usize },

    #[error("edge {index} ({u}, {v}): non-positive weight {w}")]
    NonPositiveWeight { index: usize, u: usize, v: usize, w: f64 },

    #[error("graph is disconnected: Laplacian minor is singular")]
    Disconnected,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("negative effective resistance {0}: upstream resistance estimate is broken")]
    NegativeResistance(f64),

    #[error("weight ratio {ratio:.3e} exceeds 1e12: refusing to factorize an ill-conditioned Laplacian")]
    IllConditioned { ratio: f64 },

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("candidate set is empty")]
    EmptyCandidates,

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
