//! The continuous mechanical problem: potential, Hamiltonian and the
//! nonlinear pendulum instance.
//!
//! The state is a single real coordinate `q` with conjugate momentum `p`
//! and Hamiltonian `H(p, q) = p²/(2m) + V(q)`. A [`Potential`] bundles the
//! particle mass with `V`, its gradient and its second derivative, which is
//! everything the implicit steppers need.

use crate::{Error, Result};

/// Physical parameters of the nonlinear pendulum.
///
/// The initial angle is restricted to `(0, π)`: the oscillating regime for
/// which the closed-form elliptic solution with modulus `k = sin(θ0/2)`
/// is valid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PendulumParams {
    pub mass: f64,
    pub omega: f64,
    pub theta0: f64,
}

impl PendulumParams {
    pub fn new(mass: f64, omega: f64, theta0: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidParameter(format!("mass must be > 0, got {mass}")));
        }
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::InvalidParameter(format!("omega must be > 0, got {omega}")));
        }
        if !(theta0.is_finite() && theta0 > 0.0 && theta0 < std::f64::consts::PI) {
            return Err(Error::InvalidParameter(format!(
                "theta0 must lie in (0, pi), got {theta0}"
            )));
        }
        Ok(Self { mass, omega, theta0 })
    }

    pub fn potential(&self) -> PendulumPotential {
        PendulumPotential {
            mass: self.mass,
            omega: self.omega,
        }
    }
}

/// A point of phase space at a given time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseState {
    pub t: f64,
    pub q: f64,
    pub p: f64,
}

impl PhaseState {
    pub fn new(t: f64, q: f64, p: f64) -> Self {
        Self { t, q, p }
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.q.is_finite() && self.p.is_finite()
    }
}

/// A one-degree-of-freedom mechanical system: particle mass plus potential
/// energy with its first two derivatives.
pub trait Potential {
    fn mass(&self) -> f64;
    /// Potential energy `V(q)`.
    fn value(&self, q: f64) -> f64;
    /// `V'(q)`.
    fn grad(&self, q: f64) -> f64;
    /// `V''(q)`.
    fn hess(&self, q: f64) -> f64;
    /// Characteristic force magnitude, used to scale Newton residual
    /// tolerances. Defaults to 1.
    fn force_scale(&self) -> f64 {
        1.0
    }
}

/// Pendulum potential `V(q) = m ω² (1 − cos q)`.
#[derive(Debug, Clone, Copy)]
pub struct PendulumPotential {
    pub mass: f64,
    pub omega: f64,
}

impl Potential for PendulumPotential {
    fn mass(&self) -> f64 {
        self.mass
    }

    fn value(&self, q: f64) -> f64 {
        self.mass * self.omega * self.omega * (1.0 - q.cos())
    }

    fn grad(&self, q: f64) -> f64 {
        self.mass * self.omega * self.omega * q.sin()
    }

    fn hess(&self, q: f64) -> f64 {
        self.mass * self.omega * self.omega * q.cos()
    }

    fn force_scale(&self) -> f64 {
        self.mass * self.omega * self.omega
    }
}

/// Zero potential; the free particle. The steppers become exact affine maps
/// for it, which several structural tests rely on.
#[derive(Debug, Clone, Copy)]
pub struct FreePotential {
    pub mass: f64,
}

impl Potential for FreePotential {
    fn mass(&self) -> f64 {
        self.mass
    }

    fn value(&self, _q: f64) -> f64 {
        0.0
    }

    fn grad(&self, _q: f64) -> f64 {
        0.0
    }

    fn hess(&self, _q: f64) -> f64 {
        0.0
    }
}

/// Harmonic potential `V(q) = ½ m ω² q²`, kept around for tests.
#[derive(Debug, Clone, Copy)]
pub struct HarmonicPotential {
    pub mass: f64,
    pub omega: f64,
}

impl Potential for HarmonicPotential {
    fn mass(&self) -> f64 {
        self.mass
    }

    fn value(&self, q: f64) -> f64 {
        0.5 * self.mass * self.omega * self.omega * q * q
    }

    fn grad(&self, q: f64) -> f64 {
        self.mass * self.omega * self.omega * q
    }

    fn hess(&self, _q: f64) -> f64 {
        self.mass * self.omega * self.omega
    }

    fn force_scale(&self) -> f64 {
        self.mass * self.omega * self.omega
    }
}

/// Total energy `H = p²/(2m) + V(q)`.
pub fn hamiltonian<P: Potential>(pot: &P, s: &PhaseState) -> f64 {
    s.p * s.p / (2.0 * pot.mass()) + pot.value(s.q)
}
