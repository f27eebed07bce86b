//! Modified Bessel function of the first kind for real order ν ≥ −1.
//!
//! Two regimes: the ascending series (all terms positive for ν > −1),
//! summed outward from its largest term in log space, and the Hankel
//! asymptotic expansion for large arguments.

use super::gamma::ln_gamma;
use crate::error::{domain, Result};
use std::f64::consts::PI;

fn use_asymptotic(nu: f64, x: f64) -> bool {
    x > 30.0 + 0.5 * nu * nu
}

/// I_ν(x), or e^{−x} I_ν(x) when `scaled` is set.
pub fn bessel_i(nu: f64, x: f64, scaled: bool) -> Result<f64> {
    if !(nu >= -1.0) || !nu.is_finite() {
        return Err(domain("bessel_i", format!("order {nu} < -1")));
    }
    if !(x >= 0.0) {
        return Err(domain("bessel_i", format!("argument {x} < 0")));
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    let ln = ln_bessel_i_unchecked(nu, x);
    Ok(if scaled { (ln - x).exp() } else { ln.exp() })
}

/// ln I_ν(x) for x > 0 and ν ≥ −1.
pub fn ln_bessel_i(nu: f64, x: f64) -> Result<f64> {
    if !(nu >= -1.0) || !(x > 0.0) {
        return Err(domain("ln_bessel_i", format!("nu={nu}, x={x}")));
    }
    Ok(ln_bessel_i_unchecked(nu, x))
}

pub(crate) fn ln_bessel_i_unchecked(nu: f64, x: f64) -> f64 {
    let nu = if nu == -1.0 { 1.0 } else { nu };
    if use_asymptotic(nu, x) {
        ln_asymptotic(nu, x)
    } else {
        nu * (0.5 * x).ln() + ln_reduced_series(nu, x)
    }
}

/// ln[I_ν(x) / (x/2)^ν], the log of the entire function
/// Σ_k (x²/4)^k / (k! Γ(k+ν+1)). Finite at x = 0 where it equals −lnΓ(ν+1).
pub fn ln_bessel_i_reduced(nu: f64, x: f64) -> f64 {
    let nu = if nu == -1.0 { 1.0 } else { nu };
    if x > 0.0 && use_asymptotic(nu, x) {
        ln_asymptotic(nu, x) - nu * (0.5 * x).ln()
    } else {
        ln_reduced_series(nu, x)
    }
}

fn ln_reduced_series(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return -ln_gamma(nu + 1.0);
    }
    let q = 0.25 * x * x;
    // index of the largest term: (k+1)(k+ν+1) ≈ q
    let disc = (nu * nu + x * x).sqrt();
    let peak = ((disc - nu - 2.0) * 0.5).max(0.0).floor();
    let ln_peak = peak * q.ln() - ln_gamma(peak + 1.0) - ln_gamma(peak + nu + 1.0);

    let mut sum = 1.0;
    // upward
    let mut t = 1.0;
    let mut k = peak;
    loop {
        t *= q / ((k + 1.0) * (k + nu + 1.0));
        sum += t;
        k += 1.0;
        if t < 1e-17 * sum {
            break;
        }
    }
    // downward
    let mut t = 1.0;
    let mut k = peak;
    while k >= 1.0 {
        t *= k * (k + nu) / q;
        sum += t;
        k -= 1.0;
        if t < 1e-17 * sum {
            break;
        }
    }
    ln_peak + sum.ln()
}

fn ln_asymptotic(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= -(mu - odd * odd) / (8.0 * kf * x);
        if term.abs() >= prev {
            break;
        }
        sum += term;
        prev = term.abs();
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    x - 0.5 * (2.0 * PI * x).ln() + sum.ln()
}
