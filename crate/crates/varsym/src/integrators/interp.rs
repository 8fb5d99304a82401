//! Quadratic interpolation on one time interval.
//!
//! On `[0, h]` with the scaled coordinate `θ = t/h ∈ [0, 1]`, the state is
//! represented by its values at the left end, the midpoint and the right
//! end, through the standard quadratic nodal basis.

/// Quadratic nodal basis at `θ`: `(φ₀, φ_{1/2}, φ₁)` with
/// `φ₀ = (1−θ)(1−2θ)`, `φ_{1/2} = 4θ(1−θ)`, `φ₁ = θ(2θ−1)`.
pub fn basis_eval(theta: f64) -> (f64, f64, f64) {
    (
        (1.0 - theta) * (1.0 - 2.0 * theta),
        4.0 * theta * (1.0 - theta),
        theta * (2.0 * theta - 1.0),
    )
}

/// One quadratic segment of the trajectory: nodal values and interval length.
#[derive(Debug, Clone, Copy)]
pub struct QuadraticSegment {
    pub q_left: f64,
    pub q_mid: f64,
    pub q_right: f64,
    pub h: f64,
}

impl QuadraticSegment {
    /// Interpolated position at `θ ∈ [0, 1]`.
    pub fn value(&self, theta: f64) -> f64 {
        let (b0, bm, b1) = basis_eval(theta);
        self.q_left * b0 + self.q_mid * bm + self.q_right * b1
    }

    /// Time derivatives at the left end, midpoint and right end:
    /// `g_ℓ = (−3q_ℓ + 4q_m − q_r)/h`, `g_r = (q_ℓ − 4q_m + 3q_r)/h`,
    /// `g_m = (q_r − q_ℓ)/h = (g_ℓ + g_r)/2`.
    pub fn derivatives(&self) -> (f64, f64, f64) {
        let g_left = (-3.0 * self.q_left + 4.0 * self.q_mid - self.q_right) / self.h;
        let g_right = (self.q_left - 4.0 * self.q_mid + 3.0 * self.q_right) / self.h;
        let g_mid = (self.q_right - self.q_left) / self.h;
        (g_left, g_mid, g_right)
    }
}
