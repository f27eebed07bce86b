//! Damped fixed-point iteration on [0, 1].

use crate::error::{Error, Result};

/// Stopping tolerance and iteration cap for [`fixed_point`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointSpec {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for FixedPointSpec {
    fn default() -> Self {
        FixedPointSpec {
            tol: 1e-10,
            max_iter: 500,
        }
    }
}

/// Solves x = ξ(x) on [0, 1] starting from `x0`.
///
/// Steps are x ← x + λ(ξ(x) − x), clamped to [0, 1]. A step whose residual
/// |ξ(x) − x| is larger than the current one is rejected and λ halved.
pub fn fixed_point<F: Fn(f64) -> f64>(xi: F, x0: f64, tol: f64) -> Result<f64> {
    try_fixed_point(
        |x| Ok(xi(x)),
        x0,
        FixedPointSpec {
            tol,
            ..FixedPointSpec::default()
        },
    )
}

/// [`fixed_point`] for a map that can itself fail.
pub fn try_fixed_point<F: FnMut(f64) -> Result<f64>>(mut xi: F, x0: f64, spec: FixedPointSpec) -> Result<f64> {
    if !(0.0..=1.0).contains(&x0) {
        return Err(Error::InvalidParameter(format!(
            "fixed_point start {x0} outside [0, 1]"
        )));
    }
    if !(spec.tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "fixed_point tolerance {} must be positive",
            spec.tol
        )));
    }
    let mut x = x0;
    let mut fx = xi(x)?;
    let mut resid = (fx - x).abs();
    let mut lambda = 1.0;
    for _ in 0..spec.max_iter {
        if !fx.is_finite() {
            return Err(Error::NonFinite {
                op: "fixed_point",
                at: x,
            });
        }
        if resid <= spec.tol {
            return Ok(x);
        }
        let cand = (x + lambda * (fx - x)).clamp(0.0, 1.0);
        let f_cand = xi(cand)?;
        let r_cand = (f_cand - cand).abs();
        if r_cand < resid {
            x = cand;
            fx = f_cand;
            resid = r_cand;
            lambda = (2.0 * lambda).min(1.0);
        } else {
            lambda *= 0.5;
            if lambda < 1e-12 {
                break;
            }
        }
    }
    Err(Error::Convergence {
        op: "fixed_point",
        detail: format!("residual {resid:e} at x = {x} after {} iterations", spec.max_iter),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_map() {
        assert_eq!(fixed_point(|_| 0.5, 0.0, 1e-10).unwrap(), 0.5);
    }

    #[test]
    fn identity_returns_start() {
        assert_eq!(fixed_point(|x| x, 0.3, 1e-10).unwrap(), 0.3);
    }

    #[test]
    fn oscillating_map_is_damped() {
        // ξ(x) = 1 − x overshoots forever without damping; fixed point 1/2
        let x = fixed_point(|x| 1.0 - x, 0.0, 1e-12).unwrap();
        assert!((x - 0.5).abs() < 1e-12);
    }

    #[test]
    fn cosine_fixed_point() {
        let x = fixed_point(f64::cos, 0.2, 1e-12).unwrap();
        assert!((x - 0.739_085_133_215_160_6).abs() < 1e-11);
    }

    #[test]
    fn start_outside_unit_interval_is_rejected() {
        assert!(fixed_point(|x| x, 1.5, 1e-10).is_err());
    }

    #[test]
    fn stays_in_unit_interval() {
        let x = fixed_point(|x| (x * x + 0.9).min(1.0), 0.0, 1e-12).unwrap();
        assert!((0.0..=1.0).contains(&x));
    }
}
