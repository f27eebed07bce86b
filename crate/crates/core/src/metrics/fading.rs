//! Amount of fading and outage probability.

use crate::channel::FadingLaw;
use crate::error::{domain, Result};
use crate::system::HopChain;

/// Generalized amount of fading E[γ^k]/E[γ]^k − 1 (k = 2 is the usual AF).
///
/// Uses the moment ratio of the last hop, in which γ̄ cancels:
/// AF = shape(k) / (Ā^{k−1} shape(1)^k) − 1 with shape(r) = E[γ_n^r]/γ̄^r.
pub fn amount_of_fading(chain: &HopChain, order: u32) -> Result<f64> {
    check_order(order)?;
    let abar = chain.prefix_survival();
    if abar == 0.0 {
        return Err(domain("amount_of_fading", "mean SNR is zero (certain prefix outage)"));
    }
    let last: &FadingLaw = chain.last();
    let k = f64::from(order);
    let ln = last.moment_shape(k)?.ln() - k * last.moment_shape(1.0)?.ln() - (k - 1.0) * abar.ln();
    Ok(ln.exp() - 1.0)
}

/// The same quantity from raw end-to-end moments.
pub fn amount_of_fading_from_moments(chain: &HopChain, order: u32) -> Result<f64> {
    check_order(order)?;
    let m1 = chain.end_moment(1.0)?;
    if m1 == 0.0 {
        return Err(domain("amount_of_fading", "mean SNR is zero (certain prefix outage)"));
    }
    let mk = chain.end_moment(f64::from(order))?;
    Ok(mk / m1.powi(order as i32) - 1.0)
}

fn check_order(order: u32) -> Result<()> {
    if order < 2 {
        return Err(domain("amount_of_fading", format!("order {order} must be >= 2")));
    }
    Ok(())
}

/// P(γ ≤ γ_op) for the end-to-end SNR.
pub fn outage_probability(chain: &HopChain, gamma_op: f64) -> Result<f64> {
    if !(gamma_op >= 0.0) {
        return Err(domain(
            "outage_probability",
            format!("threshold {gamma_op} must be >= 0"),
        ));
    }
    Ok(chain.end_cdf(gamma_op))
}
