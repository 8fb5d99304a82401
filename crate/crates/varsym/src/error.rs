//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A constructor or function argument violated its invariants.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A special-function argument lies outside the supported domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The per-step Newton iteration failed to reach the residual tolerance.
    #[error("Newton iteration did not converge after {iters} iterations (residual {residual:.3e}{})",
            step.map(|s| format!(", at step {s}")).unwrap_or_default())]
    NewtonDivergence {
        iters: usize,
        residual: f64,
        step: Option<usize>,
    },

    /// The Newton matrix became numerically singular.
    #[error("singular Newton matrix (determinant {det:.3e}{})",
            step.map(|s| format!(", at step {s}")).unwrap_or_default())]
    SingularJacobian { det: f64, step: Option<usize> },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Attach a trajectory step index to a solver failure.
    pub(crate) fn at_step(self, index: usize) -> Error {
        match self {
            Error::NewtonDivergence {
                iters, residual, ..
            } => Error::NewtonDivergence {
                iters,
                residual,
                step: Some(index),
            },
            Error::SingularJacobian { det, .. } => Error::SingularJacobian {
                det,
                step: Some(index),
            },
            other => other,
        }
    }
}
