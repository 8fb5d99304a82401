//! The nonlinear Simpson symplectic scheme.
//!
//! Each interval carries an internal quadratic interpolation of the state
//! (see [`super::interp`]) and the discrete Lagrangian is its Simpson
//! quadrature,
//! `L_S = (m h / 12)(g_ℓ² + 4 g_m² + g_r²) − (h/6)(V_ℓ + 4 V_m + V_r)`.
//! Stationarity with respect to the internal node gives the midpoint
//! constraint
//!
//! ```text
//! q_m − (h²/(8m)) V'(q_m) = (q_ℓ + q_r)/2
//! ```
//!
//! and, with respect to the end nodes, the one-step map in `(p, q)`:
//!
//! ```text
//! p_{j+1} − p_j + (h/6)(V'_j + 4 V'_{j+1/2} + V'_{j+1}) = 0
//! q_{j+1} − q_j − (h²/(12m))(V'_{j+1} − V'_j) − (h/(2m))(p_{j+1} + p_j) = 0
//! ```
//!
//! The three equations are solved together by Newton's method; the 3x3
//! linear system is solved exactly at every iterate.

use super::{residual_scale, NewtonConfig};
use crate::model::{PhaseState, Potential};
use crate::{Error, Result};

/// Result of one Simpson step: the converged internal node and the next
/// phase-space state.
#[derive(Debug, Clone, Copy)]
pub struct SimpsonStepResult {
    pub q_mid: f64,
    pub next: PhaseState,
    pub newton_iters: usize,
}

/// Which of the two Simpson momentum formulas to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentumSide {
    Left,
    Right,
}

/// Advance one Simpson step.
///
/// Unknowns are `(q_{j+1/2}, p_{j+1}, q_{j+1})`, initialized with the
/// first-order predictor `q_{j+1/2} = q_j + (h/2) p_j/m`,
/// `q_{j+1} = q_j + h p_j/m`, `p_{j+1} = p_j`.
pub fn simpson_step<P: Potential>(
    pot: &P,
    s: &PhaseState,
    h: f64,
    cfg: &NewtonConfig,
) -> Result<SimpsonStepResult> {
    if !s.is_finite() || !h.is_finite() || h == 0.0 {
        return Err(Error::InvalidParameter(format!(
            "simpson_step requires a finite state and nonzero h, got h = {h}"
        )));
    }
    cfg.validate()?;
    let m = pot.mass();
    let tol = cfg.residual_tol * residual_scale(pot, s.p);

    let (p_j, q_j) = (s.p, s.q);
    let grad_j = pot.grad(q_j);

    let mut q_m = q_j + 0.5 * h * p_j / m;
    let mut p = p_j;
    let mut q = q_j + h * p_j / m;

    for iter in 0..=cfg.max_iters {
        let grad_m = pot.grad(q_m);
        let grad_r = pot.grad(q);
        let r1 = q_m - h * h / (8.0 * m) * grad_m - 0.5 * (q_j + q);
        let r2 = p - p_j + h / 6.0 * (grad_j + 4.0 * grad_m + grad_r);
        let r3 = q - q_j - h * h / (12.0 * m) * (grad_r - grad_j) - h / (2.0 * m) * (p + p_j);
        let res = r1.abs().max(r2.abs()).max(r3.abs());
        if !res.is_finite() {
            return Err(Error::NewtonDivergence {
                iters: iter,
                residual: res,
                step: None,
            });
        }
        if res <= tol {
            return Ok(SimpsonStepResult {
                q_mid: q_m,
                next: PhaseState::new(s.t + h, q, p),
                newton_iters: iter,
            });
        }
        if iter == cfg.max_iters {
            return Err(Error::NewtonDivergence {
                iters: iter,
                residual: res,
                step: None,
            });
        }

        // Jacobian rows in the unknown order (q_m, p, q).
        let hess_m = pot.hess(q_m);
        let hess_r = pot.hess(q);
        let a = [
            [1.0 - h * h / (8.0 * m) * hess_m, 0.0, -0.5],
            [4.0 * h / 6.0 * hess_m, 1.0, h / 6.0 * hess_r],
            [0.0, -h / (2.0 * m), 1.0 - h * h / (12.0 * m) * hess_r],
        ];
        let d = solve3(&a, [r1, r2, r3])?;
        q_m -= d[0];
        p -= d[1];
        q -= d[2];
    }
    unreachable!("loop always returns")
}

/// Exact 3x3 solve by Cramer's rule; errors out on a numerically singular
/// matrix (the scheme's singular set `det → 0` at very large steps).
fn solve3(a: &[[f64; 3]; 3], b: [f64; 3]) -> Result<[f64; 3]> {
    let det = det3(a);
    if !det.is_finite() || det.abs() < 1e-12 {
        return Err(Error::SingularJacobian { det, step: None });
    }
    let mut x = [0.0; 3];
    for (col, slot) in x.iter_mut().enumerate() {
        let mut ac = *a;
        for row in 0..3 {
            ac[row][col] = b[row];
        }
        *slot = det3(&ac) / det;
    }
    Ok(x)
}

fn det3(a: &[[f64; 3]; 3]) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Solve the midpoint constraint
/// `q_m − (h²/(8m)) V'(q_m) = (q_l + q_r)/2` for `q_m` alone.
pub fn solve_midpoint<P: Potential>(
    pot: &P,
    q_l: f64,
    q_r: f64,
    h: f64,
    cfg: &NewtonConfig,
) -> Result<f64> {
    cfg.validate()?;
    let m = pot.mass();
    let rhs = 0.5 * (q_l + q_r);
    let tol = cfg.residual_tol * residual_scale(pot, 0.0);
    let mut q_m = rhs;
    for iter in 0..=cfg.max_iters {
        let r = q_m - h * h / (8.0 * m) * pot.grad(q_m) - rhs;
        if !r.is_finite() {
            return Err(Error::NewtonDivergence {
                iters: iter,
                residual: r,
                step: None,
            });
        }
        if r.abs() <= tol {
            return Ok(q_m);
        }
        if iter == cfg.max_iters {
            return Err(Error::NewtonDivergence {
                iters: iter,
                residual: r.abs(),
                step: None,
            });
        }
        let slope = 1.0 - h * h / (8.0 * m) * pot.hess(q_m);
        if slope.abs() < 1e-12 {
            return Err(Error::SingularJacobian {
                det: slope,
                step: None,
            });
        }
        q_m -= r / slope;
    }
    unreachable!("loop always returns")
}

/// Momentum at either end of one Simpson interval, computed from the nodal
/// positions after solving the midpoint constraint:
///
/// ```text
/// p_right = (m/h)(q_r − q_l) − (h/6)(2 V'_m + V'_r)
/// p_left  = (m/h)(q_r − q_l) + (h/6)(V'_l + 2 V'_m)
/// ```
pub fn momentum_from_nodes_simpson<P: Potential>(
    pot: &P,
    q_l: f64,
    q_r: f64,
    h: f64,
    side: MomentumSide,
    cfg: &NewtonConfig,
) -> Result<f64> {
    let m = pot.mass();
    let q_m = solve_midpoint(pot, q_l, q_r, h, cfg)?;
    let grad_m = pot.grad(q_m);
    let base = m / h * (q_r - q_l);
    Ok(match side {
        MomentumSide::Right => base - h / 6.0 * (2.0 * grad_m + pot.grad(q_r)),
        MomentumSide::Left => base + h / 6.0 * (pot.grad(q_l) + 2.0 * grad_m),
    })
}

/// Discrete Simpson action `Σ_d = Σ_j L_S(q_j, q_{j+1/2}, q_{j+1})`.
///
/// `positions` holds the `n+1` nodal values, `midpoints` the `n` internal
/// values.
pub fn discrete_action_simpson<P: Potential>(
    pot: &P,
    positions: &[f64],
    midpoints: &[f64],
    h: f64,
) -> f64 {
    assert_eq!(
        positions.len(),
        midpoints.len() + 1,
        "need one midpoint per interval"
    );
    let m = pot.mass();
    positions
        .windows(2)
        .zip(midpoints)
        .map(|(w, &q_m)| {
            let seg = super::QuadraticSegment {
                q_left: w[0],
                q_mid: q_m,
                q_right: w[1],
                h,
            };
            let (gl, gm, gr) = seg.derivatives();
            m * h / 12.0 * (gl * gl + 4.0 * gm * gm + gr * gr)
                - h / 6.0 * (pot.value(w[0]) + 4.0 * pot.value(q_m) + pot.value(w[1]))
        })
        .sum()
}
