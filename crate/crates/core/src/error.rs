use thiserror::Error;

use crate::solvers::{GridSample, InscribedTriangle};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("infeasible shape: {0}")]
    InfeasibleShape(String),

    /// A planar path passes through (or within tolerance of) the base point.
    /// `index` is the offending vertex or segment.
    #[error("path passes through the base point near index {index}")]
    SingularPath { index: usize },

    #[error("winding sweep {sweep} is not close to an integer")]
    NumericalDegeneracy { sweep: f64 },

    /// The sweep invariant never changed on the grid. The grid is returned
    /// so callers can inspect it or retry with a finer one.
    #[error("no bracket found: {reason}")]
    NoBracket { reason: String, grid: Vec<GridSample> },

    #[error("refinement did not converge (best residual {residual:e})")]
    RefineFailed {
        residual: f64,
        best: Box<InscribedTriangle>,
    },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }
}
