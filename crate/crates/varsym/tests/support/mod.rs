//! Independent oracles used by the integration tests.
//!
//! Nothing here may call into the implementation paths it is used to check:
//! quadrature is Romberg (the library uses AGM and adaptive Simpson), the
//! one-step oracles are damped fixed-point iterations (the library uses
//! Newton), and amplitude inversion is plain bisection.

#![allow(dead_code)]

use varsym::model::Potential;

/// Romberg quadrature of `f` on `[a, b]`.
pub fn romberg(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    const LEVELS: usize = 22;
    let mut table = vec![vec![0.0_f64; LEVELS]; LEVELS];
    let mut h = b - a;
    table[0][0] = 0.5 * h * (f(a) + f(b));
    for i in 1..LEVELS {
        h *= 0.5;
        let points = 1usize << (i - 1);
        let sum: f64 = (0..points)
            .map(|k| f(a + (2 * k + 1) as f64 * h))
            .sum();
        table[i][0] = 0.5 * table[i - 1][0] + h * sum;
        for j in 1..=i {
            let factor = 4.0_f64.powi(j as i32);
            table[i][j] = (factor * table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
        }
        if i > 3 && (table[i][i] - table[i - 1][i - 1]).abs() < 1e-14 * (1.0 + table[i][i].abs()) {
            return table[i][i];
        }
    }
    table[LEVELS - 1][LEVELS - 1]
}

/// `F(phi, m)` by direct Romberg quadrature of the defining integrand.
pub fn elliptic_f_quad(phi: f64, m_param: f64) -> f64 {
    if phi == 0.0 {
        return 0.0;
    }
    let val = romberg(
        |x: f64| 1.0 / (1.0 - m_param * x.sin().powi(2)).sqrt(),
        0.0,
        phi.abs(),
    );
    val.copysign(phi)
}

/// `K(m)` by quadrature.
pub fn elliptic_k_quad(m_param: f64) -> f64 {
    elliptic_f_quad(std::f64::consts::FRAC_PI_2, m_param)
}

/// Invert `F(., m)` on `[-pi/2, pi/2]` by bisection.
pub fn invert_f_bisect(u: f64, m_param: f64) -> f64 {
    let (mut lo, mut hi) = (-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if elliptic_f_quad(mid, m_param) < u {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// One Newmark step by fixed-point iteration on the defining equations.
/// Returns `(p_next, q_next)`.
pub fn newmark_step_fixed_point<P: Potential>(pot: &P, p_j: f64, q_j: f64, h: f64) -> (f64, f64) {
    let m = pot.mass();
    let (mut p, mut q) = (p_j, q_j);
    for _ in 0..10_000 {
        let p_new = p_j - h * pot.grad(0.5 * (q_j + q));
        let q_new = q_j + h / (2.0 * m) * (p_new + p_j);
        let res = (p_new - p).abs().max((q_new - q).abs());
        p = p_new;
        q = q_new;
        if res < 1e-15 {
            break;
        }
    }
    (p, q)
}

/// One Simpson step by fixed-point iteration on the three defining
/// equations. Returns `(q_mid, p_next, q_next)`.
pub fn simpson_step_fixed_point<P: Potential>(
    pot: &P,
    p_j: f64,
    q_j: f64,
    h: f64,
) -> (f64, f64, f64) {
    let m = pot.mass();
    let grad_j = pot.grad(q_j);
    let (mut q_m, mut p, mut q) = (q_j, p_j, q_j);
    for _ in 0..10_000 {
        let q_m_new = 0.5 * (q_j + q) + h * h / (8.0 * m) * pot.grad(q_m);
        let p_new = p_j - h / 6.0 * (grad_j + 4.0 * pot.grad(q_m_new) + pot.grad(q));
        let q_new =
            q_j + h * h / (12.0 * m) * (pot.grad(q) - grad_j) + h / (2.0 * m) * (p_new + p_j);
        let res = (q_m_new - q_m)
            .abs()
            .max((p_new - p).abs())
            .max((q_new - q).abs());
        q_m = q_m_new;
        p = p_new;
        q = q_new;
        if res < 1e-15 {
            break;
        }
    }
    (q_m, p, q)
}

/// Solve the Simpson midpoint constraint by bisection.
pub fn solve_midpoint_bisect<P: Potential>(pot: &P, q_l: f64, q_r: f64, h: f64) -> f64 {
    let m = pot.mass();
    let rhs = 0.5 * (q_l + q_r);
    let f = |q_m: f64| q_m - h * h / (8.0 * m) * pot.grad(q_m) - rhs;
    let span = 1.0 + (q_r - q_l).abs();
    let (mut lo, mut hi) = (rhs - span, rhs + span);
    assert!(f(lo) < 0.0 && f(hi) > 0.0, "bisection bracket failed");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
