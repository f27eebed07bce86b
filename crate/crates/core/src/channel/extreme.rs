//! The α-κ-μ-Extreme law: a point mass e^{−2m} at γ = 0 plus
//!
//! ```text
//! f(γ) = a γ^{α/4 − 1} e^{−b γ^{α/2}} I_1(√(c γ^{α/2})),
//! a = α m e^{−2m} / γ̄^{α/4},  b = 2m/γ̄^{α/2},  c = 16m²/γ̄^{α/2}.
//! ```

use super::akm::{finite_exp, positive, MAX_NONCENTRALITY};
use super::poincare::{series_coefficients, PoincareSeries};
use crate::error::{domain, Error, Result};
use crate::specfun::{kummer::ln_kummer_m, ln_bessel_i_reduced, ln_gamma, marcum_pair};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaKappaMuExtreme {
    alpha: f64,
    m: f64,
    mean_snr: f64,
    a: f64,
    b: f64,
    c: f64,
}

impl AlphaKappaMuExtreme {
    pub fn new(alpha: f64, m: f64, mean_snr: f64) -> Result<Self> {
        positive("alpha", alpha)?;
        positive("m", m)?;
        positive("mean_snr", mean_snr)?;
        if 2.0 * m > MAX_NONCENTRALITY {
            return Err(Error::InvalidParameter(format!(
                "2m = {} exceeds {MAX_NONCENTRALITY}",
                2.0 * m
            )));
        }
        let scale = mean_snr.powf(0.5 * alpha);
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "mean_snr = {mean_snr} with alpha = {alpha} is out of range"
            )));
        }
        Ok(AlphaKappaMuExtreme {
            alpha,
            m,
            mean_snr,
            a: alpha * m * (-2.0 * m).exp() / scale.sqrt(),
            b: 2.0 * m / scale,
            c: 16.0 * m * m / scale,
        })
    }

    /// m = μ(κ+1)²/(2κ+1).
    pub fn m_from_kappa_mu(kappa: f64, mu: f64) -> Result<f64> {
        positive("kappa", kappa)?;
        positive("mu", mu)?;
        Ok(mu * (kappa + 1.0) * (kappa + 1.0) / (2.0 * kappa + 1.0))
    }

    pub fn from_kappa_mu(alpha: f64, kappa: f64, mu: f64, mean_snr: f64) -> Result<Self> {
        Self::new(alpha, Self::m_from_kappa_mu(kappa, mu)?, mean_snr)
    }

    /// Law whose mean SNR E[γ] equals `ebn0`.
    pub fn from_ebn0(alpha: f64, m: f64, ebn0: f64) -> Result<Self> {
        positive("ebn0", ebn0)?;
        let shape = Self::new(alpha, m, 1.0)?.moment_shape(1.0)?;
        Self::new(alpha, m, ebn0 / shape)
    }

    pub fn with_mean_snr(&self, mean_snr: f64) -> Result<Self> {
        Self::new(self.alpha, self.m, mean_snr)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn m(&self) -> f64 {
        self.m
    }
    pub fn mean_snr(&self) -> f64 {
        self.mean_snr
    }
    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Probability mass e^{−2m} at γ = 0.
    pub fn zero_mass(&self) -> f64 {
        (-2.0 * self.m).exp()
    }

    /// ln of the continuous density at γ > 0.
    pub fn ln_pdf(&self, gamma: f64) -> f64 {
        if !(gamma > 0.0) || gamma.is_infinite() {
            return f64::NEG_INFINITY;
        }
        let m = self.m;
        let ln_g = gamma.ln();
        let ln_y = 0.5 * self.alpha * (ln_g - self.mean_snr.ln());
        let y = ln_y.exp();
        if !y.is_finite() {
            return f64::NEG_INFINITY;
        }
        // (2αm²/γ) Y e^{−2m(1+Y)} Ĩ_1(4m√Y),  Y = (γ/γ̄)^{α/2}
        (2.0 * self.alpha * m * m).ln() - ln_g + ln_y - 2.0 * m * (1.0 + y)
            + ln_bessel_i_reduced(1.0, 4.0 * m * y.sqrt())
    }

    pub fn pdf(&self, gamma: f64) -> f64 {
        self.ln_pdf(gamma).exp()
    }

    /// (F(γ), 1 − F(γ)); F(0) = e^{−2m}.
    pub fn cdf_pair(&self, gamma: f64) -> (f64, f64) {
        let y = if gamma <= 0.0 {
            0.0
        } else {
            (gamma / self.mean_snr).powf(0.5 * self.alpha)
        };
        marcum_pair(0.0, 2.0 * self.m.sqrt(), 2.0 * (self.m * y).sqrt())
    }

    pub fn cdf(&self, gamma: f64) -> f64 {
        self.cdf_pair(gamma).0
    }

    pub fn survival(&self, gamma: f64) -> f64 {
        self.cdf_pair(gamma).1
    }

    /// E[γ^r]/γ̄^r = Γ(1+s) Φ(1+s; 2; 2m) / (e^{2m} (2m)^{s−1}), s = 2r/α.
    pub fn moment_shape(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(domain(
                "moment",
                format!("r = {r}: negative moments diverge on the point mass"),
            ));
        }
        if r == 0.0 {
            return Ok(1.0);
        }
        let s = 2.0 * r / self.alpha;
        let two_m = 2.0 * self.m;
        let phi = ln_kummer_m(1.0 + s, 2.0, two_m)?;
        finite_exp("moment", ln_gamma(1.0 + s) + phi.ln - two_m - (s - 1.0) * two_m.ln())
    }

    pub fn moment(&self, r: f64) -> Result<f64> {
        let shape = self.moment_shape(r)?;
        finite_exp("moment", shape.ln() + r * self.mean_snr.ln())
    }

    /// Exponent p with f(γ) ~ γ^{p−1} at the origin.
    pub fn origin_exponent(&self) -> f64 {
        0.5 * self.alpha
    }

    /// Expansion of the continuous part near the origin; the series carries
    /// the law's own point mass.
    pub fn poincare_series(&self, order: usize) -> Result<PoincareSeries> {
        let prefactor = 0.5 * self.a * self.c.sqrt();
        let (d, t) = series_coefficients(order, prefactor, self.b, self.c / 4.0, 2.0, self.alpha, 1.0)?;
        PoincareSeries::new(d, t, self.zero_mass())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{bessel_i, kummer_m};

    #[test]
    fn pdf_matches_textbook_form() {
        let l = AlphaKappaMuExtreme::new(2.7, 1.3, 2.0).unwrap();
        for &g in &[0.01f64, 0.5, 2.0, 9.0] {
            let y = g.powf(l.alpha / 2.0);
            let want =
                l.a * g.powf(l.alpha / 4.0 - 1.0) * (-l.b * y).exp() * bessel_i(1.0, (l.c * y).sqrt(), false).unwrap();
            assert!((l.pdf(g) / want - 1.0).abs() < 1e-12, "g={g}");
        }
    }

    #[test]
    fn m_constructor() {
        assert!((AlphaKappaMuExtreme::m_from_kappa_mu(1.0, 1.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn from_ebn0_closed_form() {
        // α = 2, m = 1: γ̄ = e²/(Γ(2) Φ(2; 2; 2)) = e²/e² = 1
        let l = AlphaKappaMuExtreme::from_ebn0(2.0, 1.0, 1.0).unwrap();
        let want = (2.0f64).exp() / kummer_m(2.0, 2.0, 2.0).unwrap();
        assert!((l.mean_snr() - want).abs() < 1e-13);
        let l = AlphaKappaMuExtreme::from_ebn0(3.3, 0.7, 4.0).unwrap();
        assert!((l.moment(1.0).unwrap() / 4.0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn point_mass_and_limits() {
        let l = AlphaKappaMuExtreme::new(2.0, 1.5, 1.0).unwrap();
        assert!((l.cdf(0.0) - (-3.0f64).exp()).abs() < 1e-15);
        assert_eq!(l.cdf(f64::INFINITY), 1.0);
    }

    #[test]
    fn small_gamma_limit() {
        for &alpha in &[1.5, 2.0, 4.0] {
            let l = AlphaKappaMuExtreme::new(alpha, 0.8, 3.0).unwrap();
            let g: f64 = 1e-9;
            let ratio = l.pdf(g) / g.powf(alpha / 2.0 - 1.0);
            let want = l.a * l.c.sqrt() / 2.0;
            assert!((ratio / want - 1.0).abs() < 1e-6, "alpha={alpha}");
        }
    }

    #[test]
    fn negative_moment_rejected() {
        assert!(AlphaKappaMuExtreme::new(2.0, 1.0, 1.0).unwrap().moment(-1.0).is_err());
    }
}
