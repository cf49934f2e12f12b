use thiserror::Error;

use crate::sdp::SolveStatus;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("dimension {dim} exceeds the configured maximum {max}")]
    DimensionOverflow { dim: usize, max: usize },

    #[error("matrix is not Hermitian (relative asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix is not an isometry (residual {residual:.3e})")]
    NotIsometry { residual: f64 },

    #[error("matrix is not an orthogonal projector (residual {residual:.3e})")]
    NotProjector { residual: f64 },

    #[error("operator space is not closed under adjoints")]
    NotAdjointClosed,

    #[error("operator space is not a non-commutative graph")]
    NotNcGraph,

    #[error("Kraus operators are not trace preserving (residual {residual:.3e})")]
    NotTracePreserving { residual: f64 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("size {size} exceeds the cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },

    #[error("infeasible request: {0}")]
    Infeasible(String),

    #[error("solver finished with status {status:?}")]
    Solver { status: SolveStatus },

    #[error("primal {primal} and dual {dual} disagree beyond tolerance")]
    GapTooLarge { primal: f64, dual: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
