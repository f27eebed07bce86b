//! A single hop's fading law, either family.

use super::akm::AlphaKappaMu;
use super::extreme::AlphaKappaMuExtreme;
use super::poincare::PoincareSeries;
use crate::error::Result;
use crate::numerics::{integrate_scaled, QuadSpec, Quadrature};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FadingLaw {
    Akm(AlphaKappaMu),
    Extreme(AlphaKappaMuExtreme),
}

impl From<AlphaKappaMu> for FadingLaw {
    fn from(l: AlphaKappaMu) -> Self {
        FadingLaw::Akm(l)
    }
}

impl From<AlphaKappaMuExtreme> for FadingLaw {
    fn from(l: AlphaKappaMuExtreme) -> Self {
        FadingLaw::Extreme(l)
    }
}

impl FadingLaw {
    pub fn alpha(&self) -> f64 {
        match self {
            FadingLaw::Akm(l) => l.alpha(),
            FadingLaw::Extreme(l) => l.alpha(),
        }
    }

    /// The γ̄ parameter of the law.
    pub fn mean_snr(&self) -> f64 {
        match self {
            FadingLaw::Akm(l) => l.mean_snr(),
            FadingLaw::Extreme(l) => l.mean_snr(),
        }
    }

    pub fn with_mean_snr(&self, mean_snr: f64) -> Result<Self> {
        Ok(match self {
            FadingLaw::Akm(l) => l.with_mean_snr(mean_snr)?.into(),
            FadingLaw::Extreme(l) => l.with_mean_snr(mean_snr)?.into(),
        })
    }

    /// Same shape, γ̄ chosen so that E[γ] = `ebn0`.
    pub fn with_ebn0(&self, ebn0: f64) -> Result<Self> {
        Ok(match self {
            FadingLaw::Akm(l) => AlphaKappaMu::from_ebn0(l.alpha(), l.kappa(), l.mu(), ebn0)?.into(),
            FadingLaw::Extreme(l) => AlphaKappaMuExtreme::from_ebn0(l.alpha(), l.m(), ebn0)?.into(),
        })
    }

    /// Probability of γ = 0 exactly.
    pub fn point_mass(&self) -> f64 {
        match self {
            FadingLaw::Akm(_) => 0.0,
            FadingLaw::Extreme(l) => l.zero_mass(),
        }
    }

    /// Continuous part of the density.
    pub fn pdf(&self, gamma: f64) -> f64 {
        match self {
            FadingLaw::Akm(l) => l.pdf(gamma),
            FadingLaw::Extreme(l) => l.pdf(gamma),
        }
    }

    /// (F(γ), 1 − F(γ)), including the point mass in F.
    pub fn cdf_pair(&self, gamma: f64) -> (f64, f64) {
        match self {
            FadingLaw::Akm(l) => l.cdf_pair(gamma),
            FadingLaw::Extreme(l) => l.cdf_pair(gamma),
        }
    }

    pub fn cdf(&self, gamma: f64) -> f64 {
        self.cdf_pair(gamma).0
    }

    pub fn survival(&self, gamma: f64) -> f64 {
        self.cdf_pair(gamma).1
    }

    pub fn moment(&self, r: f64) -> Result<f64> {
        match self {
            FadingLaw::Akm(l) => l.moment(r),
            FadingLaw::Extreme(l) => l.moment(r),
        }
    }

    /// E[γ^r]/γ̄^r.
    pub fn moment_shape(&self, r: f64) -> Result<f64> {
        match self {
            FadingLaw::Akm(l) => l.moment_shape(r),
            FadingLaw::Extreme(l) => l.moment_shape(r),
        }
    }

    /// Exponent p with f(γ) ~ γ^{p−1} at the origin.
    pub fn origin_exponent(&self) -> f64 {
        match self {
            FadingLaw::Akm(l) => l.origin_exponent(),
            FadingLaw::Extreme(l) => l.origin_exponent(),
        }
    }

    pub fn poincare_series(&self, order: usize) -> Result<PoincareSeries> {
        match self {
            FadingLaw::Akm(l) => l.poincare_series(order),
            FadingLaw::Extreme(l) => l.poincare_series(order),
        }
    }

    /// ∫_lo^∞ g(γ) f(γ) dγ over the continuous part. `scales` lists lengths
    /// on which g varies; the law's own scales are always added.
    pub fn expect_continuous<G: Fn(f64) -> f64>(
        &self,
        g: G,
        lo: f64,
        scales: &[f64],
        spec: &QuadSpec,
    ) -> Result<Quadrature> {
        self.expect_continuous_pow(g, lo, 0.0, scales, spec)
    }

    /// As [`expect_continuous`](Self::expect_continuous) for a g that
    /// behaves like γ^e at the origin; needed when e < 0.
    pub fn expect_continuous_pow<G: Fn(f64) -> f64>(
        &self,
        g: G,
        lo: f64,
        e: f64,
        scales: &[f64],
        spec: &QuadSpec,
    ) -> Result<Quadrature> {
        let mut all = Vec::with_capacity(scales.len() + 4);
        all.extend_from_slice(scales);
        // bulk of the law: γ̄ times a spread that shrinks as α grows
        let gbar = self.mean_snr();
        all.push(gbar);
        all.push(gbar * 0.01f64.powf(2.0 / self.alpha()));
        all.push(gbar * 10.0f64.powf(2.0 / self.alpha()));
        if lo > 0.0 {
            all.push(4.0 * lo);
        }
        let p = if lo == 0.0 { self.origin_exponent() + e } else { 1.0 };
        integrate_scaled(
            |x| {
                let f = self.pdf(x);
                if f == 0.0 {
                    0.0
                } else {
                    g(x) * f
                }
            },
            lo,
            p,
            &all,
            spec,
        )
    }
}
