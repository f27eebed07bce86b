//! Power-series expansion of a fading pdf near the origin.
//!
//! Both laws share the shape P γ^{t_0} e^{−s y} Ĩ(q y) with y = γ^{α/2};
//! multiplying the two series out gives
//!
//! ```text
//! f(γ) ≈ Σ_{k<N} d_k γ^{t_k},
//! d_k = P Σ_{j≤k} (−1)^j s^j q^{k−j} / (j! (k−j)! Γ(k − j + g)),
//! t_k = α(k + e)/2 − 1,
//! ```
//!
//! with (s, q, g, e) = (σ, θ/4, μ, μ) for α-κ-μ and (b, c/4, 2, 1) for the
//! Extreme law. The series is asymptotic: more terms do not always help.

use crate::error::{Error, Result};
use crate::specfun::ln_gamma;

/// Truncated expansion Σ d_k γ^{t_k} plus the probability mass at γ = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PoincareSeries {
    coefficients: Vec<f64>,
    exponents: Vec<f64>,
    leading_mass: f64,
}

impl PoincareSeries {
    pub fn new(coefficients: Vec<f64>, exponents: Vec<f64>, leading_mass: f64) -> Result<Self> {
        if coefficients.is_empty() || coefficients.len() != exponents.len() {
            return Err(Error::InvalidParameter(format!(
                "series needs matching non-empty coefficient and exponent lists ({} vs {})",
                coefficients.len(),
                exponents.len()
            )));
        }
        if exponents.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter(
                "series exponents must increase strictly".into(),
            ));
        }
        if !(0.0..=1.0).contains(&leading_mass) {
            return Err(Error::InvalidParameter(format!(
                "point mass {leading_mass} outside [0, 1]"
            )));
        }
        Ok(PoincareSeries {
            coefficients,
            exponents,
            leading_mass,
        })
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn exponents(&self) -> &[f64] {
        &self.exponents
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn leading_mass(&self) -> f64 {
        self.leading_mass
    }

    /// Copy with a different point mass at the origin.
    pub fn with_leading_mass(&self, mass: f64) -> Result<Self> {
        Self::new(self.coefficients.clone(), self.exponents.clone(), mass)
    }

    /// Σ d_k γ^{t_k}, the continuous part of the expansion.
    pub fn eval(&self, gamma: f64) -> f64 {
        self.coefficients
            .iter()
            .zip(&self.exponents)
            .map(|(d, t)| d * gamma.powf(*t))
            .sum()
    }

    /// Σ d_k · kernel(t_k).
    pub fn moment_sum<F: Fn(f64) -> f64>(&self, kernel: F) -> f64 {
        self.coefficients
            .iter()
            .zip(&self.exponents)
            .map(|(d, t)| d * kernel(*t))
            .sum()
    }
}

pub(crate) fn series_coefficients(
    order: usize,
    prefactor: f64,
    s: f64,
    q: f64,
    gamma_offset: f64,
    alpha: f64,
    exponent_offset: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if order == 0 {
        return Err(Error::InvalidParameter("series order must be at least 1".into()));
    }
    let mut d = Vec::with_capacity(order);
    let mut t = Vec::with_capacity(order);
    for k in 0..order {
        let mut sum = 0.0;
        for j in 0..=k {
            let (jf, rest) = (j as f64, (k - j) as f64);
            let ln_mag =
                jf * s.ln() + rest * q.ln() - ln_gamma(jf + 1.0) - ln_gamma(rest + 1.0) - ln_gamma(rest + gamma_offset);
            let mag = if rest == 0.0 {
                // q^0 = 1 even when q underflows to 0
                (jf * s.ln() - ln_gamma(jf + 1.0) - ln_gamma(gamma_offset)).exp()
            } else {
                ln_mag.exp()
            };
            sum += if j % 2 == 0 { mag } else { -mag };
        }
        d.push(prefactor * sum);
        t.push(0.5 * alpha * (k as f64 + exponent_offset) - 1.0);
    }
    Ok((d, t))
}
