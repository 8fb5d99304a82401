//! The two implicit variational steppers and their shared machinery.
//!
//! Both schemes advance `(p_j, q_j) → (p_{j+1}, q_{j+1})` by solving a small
//! nonlinear system with Newton's method at each step. They come from a
//! discrete action: the Newmark scheme uses a midpoint quadrature of the
//! Lagrangian per interval, the Simpson scheme a quadratic internal
//! interpolation with Simpson quadrature, which introduces one internal
//! degree of freedom `q_{j+1/2}` per interval.

mod interp;
mod newmark;
mod simpson;

pub use interp::{basis_eval, QuadraticSegment};
pub use newmark::{discrete_action_newmark, newmark_step};
pub use simpson::{
    discrete_action_simpson, momentum_from_nodes_simpson, simpson_step, solve_midpoint,
    MomentumSide, SimpsonStepResult,
};

use crate::model::{PhaseState, Potential};
use crate::{Error, Result};

/// Which one-step map to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Newmark,
    Simpson,
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Newmark => "newmark",
            Scheme::Simpson => "simpson",
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "newmark" => Ok(Scheme::Newmark),
            "simpson" => Ok(Scheme::Simpson),
            other => Err(Error::InvalidParameter(format!(
                "unknown scheme '{other}' (expected 'newmark' or 'simpson')"
            ))),
        }
    }
}

/// Termination contract for the per-step Newton iteration.
///
/// Convergence is declared when the max-norm of the residual vector drops
/// below `residual_tol` times a magnitude scale (see [`residual_scale`]).
#[derive(Debug, Clone, Copy)]
pub struct NewtonConfig {
    pub residual_tol: f64,
    pub max_iters: usize,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        Self {
            residual_tol: 1e-13,
            max_iters: 25,
        }
    }
}

impl NewtonConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.residual_tol.is_finite() && self.residual_tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "residual_tol must be > 0, got {}",
                self.residual_tol
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidParameter("max_iters must be >= 1".into()));
        }
        Ok(())
    }
}

/// Magnitude scale for the Newton residual test: `max(1, |p_j|, force scale)`.
pub fn residual_scale<P: Potential>(pot: &P, p_j: f64) -> f64 {
    1.0_f64.max(p_j.abs()).max(pot.force_scale())
}

/// Full description of one integration run.
#[derive(Debug, Clone)]
pub struct SchemeConfig {
    pub scheme: Scheme,
    pub h: f64,
    pub n_steps: usize,
    pub newton: NewtonConfig,
}

impl SchemeConfig {
    pub fn new(scheme: Scheme, h: f64, n_steps: usize, newton: NewtonConfig) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidParameter(format!("h must be > 0, got {h}")));
        }
        if n_steps == 0 {
            return Err(Error::InvalidParameter("n_steps must be >= 1".into()));
        }
        newton.validate()?;
        Ok(Self {
            scheme,
            h,
            n_steps,
            newton,
        })
    }
}

/// Discrete trajectory: states at the nodes `t_j = j h`, plus, for the
/// Simpson scheme, the internal midpoint positions `q_{j+1/2}`.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub states: Vec<PhaseState>,
    pub midpoints: Option<Vec<f64>>,
    pub scheme: Scheme,
    pub h: f64,
    /// Largest Newton iteration count seen over all steps.
    pub max_newton_iters: usize,
}

impl Trajectory {
    pub fn n_steps(&self) -> usize {
        self.states.len() - 1
    }
}

/// Apply the configured stepper `n_steps` times from `initial`.
///
/// Node times are computed as `j * h`, not accumulated. Stepper failures
/// carry the index of the offending step.
pub fn run_trajectory<P: Potential>(
    pot: &P,
    initial: PhaseState,
    cfg: &SchemeConfig,
) -> Result<Trajectory> {
    if !initial.is_finite() {
        return Err(Error::InvalidParameter("initial state must be finite".into()));
    }
    let mut states = Vec::with_capacity(cfg.n_steps + 1);
    let mut midpoints = match cfg.scheme {
        Scheme::Simpson => Some(Vec::with_capacity(cfg.n_steps)),
        Scheme::Newmark => None,
    };
    let mut max_newton_iters = 0;
    let mut current = PhaseState::new(0.0, initial.q, initial.p);
    states.push(current);

    for j in 0..cfg.n_steps {
        let next = match cfg.scheme {
            Scheme::Newmark => {
                let (s, iters) = newmark_step(pot, &current, cfg.h, &cfg.newton)
                    .map_err(|e| e.at_step(j))?;
                max_newton_iters = max_newton_iters.max(iters);
                s
            }
            Scheme::Simpson => {
                let res =
                    simpson_step(pot, &current, cfg.h, &cfg.newton).map_err(|e| e.at_step(j))?;
                max_newton_iters = max_newton_iters.max(res.newton_iters);
                if let Some(mids) = midpoints.as_mut() {
                    mids.push(res.q_mid);
                }
                res.next
            }
        };
        current = PhaseState::new((j + 1) as f64 * cfg.h, next.q, next.p);
        states.push(current);
    }

    Ok(Trajectory {
        states,
        midpoints,
        scheme: cfg.scheme,
        h: cfg.h,
        max_newton_iters,
    })
}
