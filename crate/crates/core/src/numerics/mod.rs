//! Adaptive quadrature and the damped fixed-point solver.

pub mod fixed_point;
pub mod quad;

pub use fixed_point::{fixed_point, try_fixed_point, FixedPointSpec};
pub use quad::{integrate, integrate_scaled, integrate_to_infinity, QuadSpec, Quadrature};
