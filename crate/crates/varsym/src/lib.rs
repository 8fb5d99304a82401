//! Variational symplectic time integrators for one-degree-of-freedom
//! Lagrangian systems.
//!
//! Two implicit one-step maps are provided: the classical Newmark scheme in
//! its midpoint-quadrature variational form (second order) and a nonlinear
//! Simpson scheme built from quadratic internal interpolation of the state
//! (fourth order at the nodes). Both are derived from a discrete action and
//! are symplectic: the one-step map in `(p, q)` is area-preserving.
//!
//! The nonlinear pendulum `V(q) = m ω² (1 − cos q)` is the reference problem.
//! Its closed-form solution in terms of Jacobi elliptic functions lives in
//! [`elliptic`] and serves as the exact oracle for every error measurement
//! in [`diagnostics`].

pub mod diagnostics;
pub mod elliptic;
pub mod error;
pub mod integrators;
pub mod model;
pub mod output;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
