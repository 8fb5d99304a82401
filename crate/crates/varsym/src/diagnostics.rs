//! Numerical verification of the structural claims: symplecticity of the
//! one-step maps, energy behavior, error norms against the exact pendulum
//! oracle and convergence-order estimation.

use crate::elliptic::ExactPendulum;
use crate::integrators::{
    newmark_step, run_trajectory, simpson_step, NewtonConfig, Scheme, SchemeConfig, Trajectory,
};
use crate::model::{hamiltonian, PhaseState, Potential};
use crate::Result;

/// Maximum-norm errors of one trajectory against the exact solution,
/// sampled at the nodes `t_j` only.
#[derive(Debug, Clone, Copy)]
pub struct ErrorReport {
    pub n_steps: usize,
    pub h: f64,
    /// `max_j |p_j − p(t_j)|`
    pub err_p: f64,
    /// `max_j |q_j − q(t_j)|`
    pub err_q: f64,
    /// `max_j |H_j − H_0| / |H_0|`
    pub err_h: f64,
}

/// Convergence orders between two meshes with ratio 2, one per measured
/// quantity. `None` marks an undefined order (zero or non-finite errors).
#[derive(Debug, Clone, Copy)]
pub struct OrderEstimate {
    pub order_p: Option<f64>,
    pub order_q: Option<f64>,
    pub order_h: Option<f64>,
}

/// Error rows over a sequence of meshes plus the order estimates between
/// consecutive rows.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub scheme: Scheme,
    pub rows: Vec<ErrorReport>,
    /// `orders[i]` compares `rows[i]` (coarse) with `rows[i + 1]` (fine).
    pub orders: Vec<OrderEstimate>,
}

/// Determinant of the one-step map's Jacobian `∂(p_{j+1}, q_{j+1})/∂(p_j, q_j)`,
/// by central finite differences with perturbation `eps`.
///
/// For a symplectic map this determinant is 1. Pass `eps = None` for the
/// default `1e-6 · max(1, |p|, |q|)`.
pub fn one_step_jacobian_det<P: Potential>(
    pot: &P,
    scheme: Scheme,
    s: &PhaseState,
    h: f64,
    eps: Option<f64>,
    newton: &NewtonConfig,
) -> Result<f64> {
    let eps = eps.unwrap_or_else(|| 1e-6 * 1.0_f64.max(s.p.abs()).max(s.q.abs()));
    let step = |p: f64, q: f64| -> Result<(f64, f64)> {
        let state = PhaseState::new(s.t, q, p);
        match scheme {
            Scheme::Newmark => {
                let (next, _) = newmark_step(pot, &state, h, newton)?;
                Ok((next.p, next.q))
            }
            Scheme::Simpson => {
                let res = simpson_step(pot, &state, h, newton)?;
                Ok((res.next.p, res.next.q))
            }
        }
    };
    let (pp, qp) = step(s.p + eps, s.q)?;
    let (pm, qm) = step(s.p - eps, s.q)?;
    let (pp2, qp2) = step(s.p, s.q + eps)?;
    let (pm2, qm2) = step(s.p, s.q - eps)?;
    let dp_dp = (pp - pm) / (2.0 * eps);
    let dq_dp = (qp - qm) / (2.0 * eps);
    let dp_dq = (pp2 - pm2) / (2.0 * eps);
    let dq_dq = (qp2 - qm2) / (2.0 * eps);
    Ok(dp_dp * dq_dq - dp_dq * dq_dp)
}

/// Hamiltonian `H_j` at every node of a trajectory.
pub fn energy_series<P: Potential>(pot: &P, traj: &Trajectory) -> Vec<f64> {
    traj.states.iter().map(|s| hamiltonian(pot, s)).collect()
}

/// Node-wise maximum-norm errors of a trajectory against the exact oracle.
pub fn error_norms<P: Potential>(
    pot: &P,
    traj: &Trajectory,
    oracle: &ExactPendulum,
) -> Result<ErrorReport> {
    let h0 = hamiltonian(pot, &traj.states[0]);
    let mut err_p: f64 = 0.0;
    let mut err_q: f64 = 0.0;
    let mut err_h: f64 = 0.0;
    for s in &traj.states {
        let exact = oracle.state(s.t)?;
        err_p = err_p.max((s.p - exact.p).abs());
        err_q = err_q.max((s.q - exact.q).abs());
        err_h = err_h.max((hamiltonian(pot, s) - h0).abs() / h0.abs());
    }
    Ok(ErrorReport {
        n_steps: traj.n_steps(),
        h: traj.h,
        err_p,
        err_q,
        err_h,
    })
}

fn order_between(coarse: f64, fine: f64) -> Option<f64> {
    if coarse.is_finite() && fine.is_finite() && coarse > 0.0 && fine > 0.0 {
        Some((coarse / fine).log2())
    } else {
        None
    }
}

/// Order estimates between two meshes; the fine mesh must have twice the
/// steps of the coarse one.
pub fn estimate_order(coarse: &ErrorReport, fine: &ErrorReport) -> OrderEstimate {
    debug_assert_eq!(fine.n_steps, 2 * coarse.n_steps);
    OrderEstimate {
        order_p: order_between(coarse.err_p, fine.err_p),
        order_q: order_between(coarse.err_q, fine.err_q),
        order_h: order_between(coarse.err_h, fine.err_h),
    }
}

/// Run one scheme over a single nonlinear period on each mesh, starting
/// from rest at `θ0`, and collect errors and orders.
pub fn convergence_study<P: Potential>(
    pot: &P,
    oracle: &ExactPendulum,
    scheme: Scheme,
    meshes: &[usize],
    newton: NewtonConfig,
) -> Result<ConvergenceReport> {
    let t_period = oracle.period;
    let initial = PhaseState::new(0.0, oracle.params.theta0, 0.0);
    let mut rows = Vec::with_capacity(meshes.len());
    for &n in meshes {
        let cfg = SchemeConfig::new(scheme, t_period / n as f64, n, newton)?;
        let traj = run_trajectory(pot, initial, &cfg)?;
        rows.push(error_norms(pot, &traj, oracle)?);
    }
    let orders = rows
        .windows(2)
        .map(|w| {
            if w[1].n_steps == 2 * w[0].n_steps {
                estimate_order(&w[0], &w[1])
            } else {
                OrderEstimate {
                    order_p: None,
                    order_q: None,
                    order_h: None,
                }
            }
        })
        .collect();
    Ok(ConvergenceReport {
        scheme,
        rows,
        orders,
    })
}
