//! Elliptic integrals of the first kind, the Jacobi amplitude and the
//! closed-form nonlinear pendulum solution.
//!
//! Conventions follow Abramowitz & Stegun: the second argument is always the
//! parameter `m = k²`, never the modulus `k`. The complete integral `K(m)`
//! is evaluated through the arithmetic-geometric mean, the incomplete
//! integral `F(φ, m)` by adaptive Simpson quadrature of the defining
//! integrand, and the amplitude `am(u, m)` by a safeguarded Newton inversion
//! of `F`.
//!
//! For the pendulum released from angle `θ0 ∈ (0, π)` with zero velocity,
//! the modulus is `k = sin(θ0/2)`, the period is `T = 4 K(k²)/ω` and
//!
//! ```text
//! φ(t) = am(K(k²) − ω t, k²),   sin(q/2) = k sin φ,   dq/dt = −2 ω k cos φ.
//! ```

use crate::model::{PendulumParams, PhaseState};
use crate::{Error, Result};
use std::f64::consts::FRAC_PI_2;

/// AGM termination threshold, relative to the current arithmetic mean.
const AGM_TOL: f64 = 1e-15;

/// Absolute tolerance for the adaptive quadrature behind `incomplete_f`.
const QUAD_TOL: f64 = 1e-14;

fn check_m_param(m_param: f64) -> Result<()> {
    if !(m_param.is_finite() && (0.0..1.0).contains(&m_param)) {
        return Err(Error::Domain(format!(
            "elliptic parameter must lie in [0, 1), got {m_param}"
        )));
    }
    Ok(())
}

/// Common limit of the arithmetic-geometric mean iteration.
pub fn agm(a: f64, b: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
        return Err(Error::Domain(format!(
            "agm requires positive finite arguments, got ({a}, {b})"
        )));
    }
    let (mut a, mut b) = (a, b);
    for _ in 0..60 {
        if (a - b).abs() <= AGM_TOL * a {
            break;
        }
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        a = an;
        b = bn;
    }
    Ok(0.5 * (a + b))
}

/// Complete elliptic integral of the first kind,
/// `K(m) = ∫₀^{π/2} dφ/√(1 − m sin²φ) = π / (2 agm(1, √(1−m)))`.
pub fn complete_k(m_param: f64) -> Result<f64> {
    check_m_param(m_param)?;
    Ok(FRAC_PI_2 / agm(1.0, (1.0 - m_param).sqrt())?)
}

/// Incomplete elliptic integral of the first kind,
/// `F(φ, m) = ∫₀^φ dξ/√(1 − m sin²ξ)` for `φ ∈ [−π/2, π/2]`.
pub fn incomplete_f(phi: f64, m_param: f64) -> Result<f64> {
    check_m_param(m_param)?;
    if !(phi.is_finite() && phi.abs() <= FRAC_PI_2 + 1e-12) {
        return Err(Error::Domain(format!(
            "incomplete_f requires |phi| <= pi/2, got {phi}"
        )));
    }
    if phi == 0.0 {
        return Ok(0.0);
    }
    // Odd in phi; integrate on [0, |phi|].
    let f = |x: f64| 1.0 / (1.0 - m_param * x.sin().powi(2)).sqrt();
    let val = adaptive_simpson(&f, 0.0, phi.abs(), QUAD_TOL);
    Ok(val.copysign(phi))
}

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_recurse(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Jacobi amplitude `am(u, m)`, the inverse of `φ ↦ F(φ, m)`, for
/// `|u| ≤ K(m)` (all the pendulum formulas need after range reduction).
pub fn jacobi_am(u: f64, m_param: f64) -> Result<f64> {
    check_m_param(m_param)?;
    let k_val = complete_k(m_param)?;
    if !(u.is_finite() && u.abs() <= k_val * (1.0 + 1e-12)) {
        return Err(Error::Domain(format!(
            "jacobi_am requires |u| <= K(m) = {k_val}, got {u}"
        )));
    }
    if u == 0.0 {
        return Ok(0.0);
    }
    let target = u.abs().min(k_val);
    // Newton on F(phi) = target with dF/dphi = 1/sqrt(1 - m sin^2 phi),
    // safeguarded by a bisection bracket on [0, pi/2].
    let (mut lo, mut hi) = (0.0_f64, FRAC_PI_2);
    let mut phi = target / k_val * FRAC_PI_2;
    for _ in 0..100 {
        let res = incomplete_f(phi, m_param)? - target;
        if res > 0.0 {
            hi = phi;
        } else {
            lo = phi;
        }
        let slope = 1.0 / (1.0 - m_param * phi.sin().powi(2)).sqrt();
        let step = res * (1.0 / slope);
        let mut next = phi - step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - phi).abs() <= 1e-16 * (1.0 + phi.abs()) {
            phi = next;
            break;
        }
        phi = next;
    }
    Ok(phi.copysign(u))
}

/// Exact solution of the nonlinear pendulum released from rest at `θ0`.
#[derive(Debug, Clone, Copy)]
pub struct ExactPendulum {
    pub params: PendulumParams,
    /// Modulus `k = sin(θ0/2)`.
    pub k: f64,
    /// Parameter `m = k²`.
    pub m_param: f64,
    /// Quarter period in the elliptic argument, `K(k²)`.
    pub quarter_period_u: f64,
    /// Nonlinear period `T = 4 K(k²)/ω`.
    pub period: f64,
}

impl ExactPendulum {
    pub fn new(params: PendulumParams) -> Result<Self> {
        let k = (params.theta0 / 2.0).sin();
        let m_param = k * k;
        let quarter_period_u = complete_k(m_param)?;
        let period = 4.0 * quarter_period_u / params.omega;
        Ok(Self {
            params,
            k,
            m_param,
            quarter_period_u,
            period,
        })
    }

    /// Exact phase-space state at time `t ≥ 0`.
    ///
    /// `t` is folded into `[0, T)`; the second half-period is obtained from
    /// the first by the turning-point reflection `q(T − s) = q(s)`,
    /// `p(T − s) = −p(s)`, so that `am` is only ever evaluated on
    /// `[−K, K]`.
    pub fn state(&self, t: f64) -> Result<PhaseState> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::Domain(format!("time must be finite and >= 0, got {t}")));
        }
        let t_red = t % self.period;
        let (q, p) = if t_red == 0.0 {
            (self.params.theta0, 0.0)
        } else if t_red > 0.5 * self.period {
            let (q, p) = self.half_period_state(self.period - t_red)?;
            (q, -p)
        } else {
            self.half_period_state(t_red)?
        };
        Ok(PhaseState::new(t, q, p))
    }

    /// Closed-form evaluation, valid for `t ∈ [0, T/2]`.
    fn half_period_state(&self, t: f64) -> Result<(f64, f64)> {
        let u = self.quarter_period_u - self.params.omega * t;
        let phi = jacobi_am(u, self.m_param)?;
        let s = (self.k * phi.sin()).clamp(-1.0, 1.0);
        let q = 2.0 * s.asin();
        let p = self.params.mass * (-2.0 * self.params.omega * self.k * phi.cos());
        Ok((q, p))
    }
}

/// Nonlinear pendulum period `T = 4 K(sin²(θ0/2)) / ω`.
pub fn exact_pendulum_period(params: &PendulumParams) -> Result<f64> {
    let k = (params.theta0 / 2.0).sin();
    Ok(4.0 * complete_k(k * k)? / params.omega)
}
