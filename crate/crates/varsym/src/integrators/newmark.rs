//! The Newmark scheme in its midpoint-quadrature variational form.
//!
//! Per interval the discrete Lagrangian is
//! `L_N(q_ℓ, q_r) = (m h / 2) ((q_r − q_ℓ)/h)² − h V((q_ℓ + q_r)/2)`,
//! and stationarity of the discrete action yields the implicit one-step map
//!
//! ```text
//! p_{j+1} − p_j + h V'((q_j + q_{j+1})/2) = 0
//! q_{j+1} − q_j − (h/(2m)) (p_{j+1} + p_j) = 0
//! ```

use super::{residual_scale, NewtonConfig};
use crate::model::{PhaseState, Potential};
use crate::{Error, Result};

/// Advance one Newmark step. Returns the next state and the number of
/// Newton iterations used.
///
/// The Newton update uses the closed-form inverse of the 2x2 Jacobian with
/// prefactor `1 / (1 + (h²/(4m)) V''((q_j + q)/2))`, initialized at
/// `p = p_j, q = q_j`.
pub fn newmark_step<P: Potential>(
    pot: &P,
    s: &PhaseState,
    h: f64,
    cfg: &NewtonConfig,
) -> Result<(PhaseState, usize)> {
    if !s.is_finite() || !h.is_finite() || h == 0.0 {
        return Err(Error::InvalidParameter(format!(
            "newmark_step requires a finite state and nonzero h, got h = {h}"
        )));
    }
    cfg.validate()?;
    let m = pot.mass();
    let tol = cfg.residual_tol * residual_scale(pot, s.p);

    let (p_j, q_j) = (s.p, s.q);
    let (mut p, mut q) = (p_j, q_j);

    for iter in 0..=cfg.max_iters {
        let q_half = 0.5 * (q_j + q);
        let r1 = p - p_j + h * pot.grad(q_half);
        let r2 = q - q_j - h / (2.0 * m) * (p + p_j);
        let res = r1.abs().max(r2.abs());
        if !res.is_finite() {
            return Err(Error::NewtonDivergence {
                iters: iter,
                residual: res,
                step: None,
            });
        }
        if res <= tol {
            return Ok((PhaseState::new(s.t + h, q, p), iter));
        }
        if iter == cfg.max_iters {
            return Err(Error::NewtonDivergence {
                iters: iter,
                residual: res,
                step: None,
            });
        }
        let vpp = pot.hess(q_half);
        let det = 1.0 + h * h / (4.0 * m) * vpp;
        if det.abs() < 1e-12 {
            return Err(Error::SingularJacobian { det, step: None });
        }
        let dp = (r1 - 0.5 * h * vpp * r2) / det;
        let dq = (h / (2.0 * m) * r1 + r2) / det;
        p -= dp;
        q -= dq;
    }
    unreachable!("loop always returns")
}

/// Discrete Newmark action `S_d = Σ_j L_N(q_j, q_{j+1})` over a sequence of
/// nodal positions.
pub fn discrete_action_newmark<P: Potential>(pot: &P, positions: &[f64], h: f64) -> f64 {
    let m = pot.mass();
    positions
        .windows(2)
        .map(|w| {
            let (q_l, q_r) = (w[0], w[1]);
            let v = (q_r - q_l) / h;
            0.5 * m * h * v * v - h * pot.value(0.5 * (q_l + q_r))
        })
        .sum()
}
