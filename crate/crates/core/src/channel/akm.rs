//! The α-κ-μ fading law of the instantaneous SNR.
//!
//! ```text
//! f(γ) = K γ^{αω/2 − 1} e^{−σ γ^{α/2}} I_{μ−1}(√(θ γ^{α/2}))
//! ω = (μ+1)/2,  σ = μ(κ+1)/γ̄^{α/2},  θ = 4μκσ,
//! K = α σ^ω e^{−μκ} / (2 (μκ)^{ω−1})
//! ```
//!
//! Here γ̄ is the scale parameter inside σ. The first moment equals γ̄ only
//! at α = 2; [`AlphaKappaMu::from_ebn0`] picks γ̄ so that E[γ] = Eb/N0.

use super::poincare::{series_coefficients, PoincareSeries};
use crate::error::{domain, Error, Result};
use crate::specfun::{kummer::ln_kummer_m_regularized, ln_bessel_i_reduced, ln_gamma, marcum_pair};

/// Largest μκ (and 2m for the Extreme law) accepted at construction.
pub const MAX_NONCENTRALITY: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaKappaMu {
    alpha: f64,
    kappa: f64,
    mu: f64,
    mean_snr: f64,
    omega: f64,
    sigma: f64,
    theta: f64,
    ln_k: f64,
}

pub(crate) fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} = {v} must be positive and finite"
        )))
    }
}

impl AlphaKappaMu {
    pub fn new(alpha: f64, kappa: f64, mu: f64, mean_snr: f64) -> Result<Self> {
        positive("alpha", alpha)?;
        positive("kappa", kappa)?;
        positive("mu", mu)?;
        positive("mean_snr", mean_snr)?;
        if mu * kappa > MAX_NONCENTRALITY {
            return Err(Error::InvalidParameter(format!(
                "mu*kappa = {} exceeds {MAX_NONCENTRALITY}",
                mu * kappa
            )));
        }
        let omega = 0.5 * (mu + 1.0);
        let sigma = mu * (kappa + 1.0) / mean_snr.powf(0.5 * alpha);
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "mean_snr = {mean_snr} with alpha = {alpha} leaves sigma = {sigma} out of range"
            )));
        }
        let theta = 4.0 * mu * kappa * sigma;
        let ln_k =
            alpha.ln() + omega * sigma.ln() - mu * kappa - std::f64::consts::LN_2 - (omega - 1.0) * (mu * kappa).ln();
        Ok(AlphaKappaMu {
            alpha,
            kappa,
            mu,
            mean_snr,
            omega,
            sigma,
            theta,
            ln_k,
        })
    }

    /// Law whose mean SNR E[γ] equals `ebn0` (energy per symbol over N0).
    pub fn from_ebn0(alpha: f64, kappa: f64, mu: f64, ebn0: f64) -> Result<Self> {
        positive("ebn0", ebn0)?;
        let unit = Self::new(alpha, kappa, mu, 1.0)?;
        let shape = unit.moment_shape(1.0)?;
        Self::new(alpha, kappa, mu, ebn0 / shape)
    }

    /// Same shape parameters, different γ̄.
    pub fn with_mean_snr(&self, mean_snr: f64) -> Result<Self> {
        Self::new(self.alpha, self.kappa, self.mu, mean_snr)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn kappa(&self) -> f64 {
        self.kappa
    }
    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn mean_snr(&self) -> f64 {
        self.mean_snr
    }
    pub fn omega(&self) -> f64 {
        self.omega
    }
    pub fn sigma(&self) -> f64 {
        self.sigma
    }
    pub fn theta(&self) -> f64 {
        self.theta
    }
    /// The normalizer K.
    pub fn k(&self) -> f64 {
        self.ln_k.exp()
    }
    pub fn ln_k(&self) -> f64 {
        self.ln_k
    }

    /// ln f(γ) for γ > 0.
    pub fn ln_pdf(&self, gamma: f64) -> f64 {
        if !(gamma > 0.0) || gamma.is_infinite() {
            return f64::NEG_INFINITY;
        }
        let (a, mu, s) = (self.alpha, self.mu, self.sigma);
        let ln_g = gamma.ln();
        let ln_y = 0.5 * a * ln_g;
        let sy = s * ln_y.exp();
        if !sy.is_finite() {
            return f64::NEG_INFINITY;
        }
        // (α/2) σ^μ γ^{αμ/2−1} e^{−σy−μκ} Ĩ_{μ−1}(2√(μκσy))
        let x = 2.0 * (mu * self.kappa * sy).sqrt();
        (0.5 * a).ln() + mu * s.ln() + (0.5 * a * mu - 1.0) * ln_g - sy - mu * self.kappa
            + ln_bessel_i_reduced(mu - 1.0, x)
    }

    pub fn pdf(&self, gamma: f64) -> f64 {
        self.ln_pdf(gamma).exp()
    }

    /// (F(γ), 1 − F(γ)) with both tails accurate.
    pub fn cdf_pair(&self, gamma: f64) -> (f64, f64) {
        if gamma <= 0.0 {
            return (0.0, 1.0);
        }
        let a = (2.0 * self.kappa * self.mu).sqrt();
        let b = (2.0 * self.sigma * gamma.powf(0.5 * self.alpha)).sqrt();
        marcum_pair(self.mu, a, b)
    }

    pub fn cdf(&self, gamma: f64) -> f64 {
        self.cdf_pair(gamma).0
    }

    pub fn survival(&self, gamma: f64) -> f64 {
        self.cdf_pair(gamma).1
    }

    /// E[γ^r]/γ̄^r = Γ(2r/α+μ) Φ̃(2r/α+μ; μ; μκ) / (e^{μκ} [μ(κ+1)]^{2r/α}).
    /// Finite for r > −αμ/2.
    pub fn moment_shape(&self, r: f64) -> Result<f64> {
        let s = 2.0 * r / self.alpha + self.mu;
        if !(s > 0.0) {
            return Err(domain("moment", format!("r = {r} needs r > -alpha*mu/2")));
        }
        let mk = self.mu * self.kappa;
        let phi = ln_kummer_m_regularized(s, self.mu, mk)?;
        let ln = ln_gamma(s) + phi.ln - mk - (2.0 * r / self.alpha) * (self.mu * (self.kappa + 1.0)).ln();
        finite_exp("moment", ln)
    }

    /// E[γ^r].
    pub fn moment(&self, r: f64) -> Result<f64> {
        let shape = self.moment_shape(r)?;
        finite_exp("moment", shape.ln() + r * self.mean_snr.ln())
    }

    /// Exponent p with f(γ) ~ γ^{p−1} at the origin.
    pub fn origin_exponent(&self) -> f64 {
        0.5 * self.alpha * self.mu
    }

    /// Poincaré expansion of the pdf near the origin with `order` terms.
    pub fn poincare_series(&self, order: usize) -> Result<PoincareSeries> {
        let prefactor = 0.5 * self.alpha * self.sigma.powf(self.mu) * (-self.mu * self.kappa).exp();
        let q = self.theta / 4.0;
        let (coefficients, exponents) =
            series_coefficients(order, prefactor, self.sigma, q, self.mu, self.alpha, self.mu)?;
        PoincareSeries::new(coefficients, exponents, 0.0)
    }
}

pub(crate) fn finite_exp(op: &'static str, ln: f64) -> Result<f64> {
    let v = ln.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow {
            op,
            detail: format!("ln value {ln}"),
        })
    }
}
