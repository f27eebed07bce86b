//! Exact samplers via the Poisson–Gamma form of the noncentral chi-square.
//!
//! α-κ-μ: J ~ Poisson(μκ), X ~ Gamma(μ+J, 2), γ = (X/(2σ))^{2/α}.
//! Extreme: J ~ Poisson(2m); γ = 0 when J = 0, else X ~ Gamma(J, 2) and
//! γ = γ̄ (X/(4m))^{2/α}.

use crate::channel::{AlphaKappaMu, AlphaKappaMuExtreme, FadingLaw};
use crate::error::{Error, Result};
use crate::system::HopChain;
use rand::Rng;
use rand_distr::{Distribution, Gamma, Poisson};

fn poisson(lambda: f64) -> Result<Poisson<f64>> {
    Poisson::new(lambda).map_err(|e| Error::InvalidParameter(format!("poisson rate {lambda}: {e}")))
}

/// Pre-built sampler for one hop.
#[derive(Debug, Clone)]
pub struct HopSampler {
    poisson: Poisson<f64>,
    shape_offset: f64,
    scale: f64,
    exponent: f64,
    factor: f64,
    zero_at_j0: bool,
}

impl HopSampler {
    pub fn new(law: &FadingLaw) -> Result<Self> {
        match law {
            FadingLaw::Akm(l) => Ok(HopSampler {
                poisson: poisson(l.mu() * l.kappa())?,
                shape_offset: l.mu(),
                scale: 0.5 / l.sigma(),
                exponent: 2.0 / l.alpha(),
                factor: 1.0,
                zero_at_j0: false,
            }),
            FadingLaw::Extreme(l) => Ok(HopSampler {
                poisson: poisson(2.0 * l.m())?,
                shape_offset: 0.0,
                scale: 1.0 / (4.0 * l.m()),
                exponent: 2.0 / l.alpha(),
                factor: l.mean_snr(),
                zero_at_j0: true,
            }),
        }
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let j = self.poisson.sample(rng);
        if self.zero_at_j0 && j == 0.0 {
            return 0.0;
        }
        let x = Gamma::new(self.shape_offset + j, 2.0)
            .expect("shape is positive and finite by construction")
            .sample(rng);
        self.factor * (x * self.scale).powf(self.exponent)
    }
}

pub fn sample_akm<R: Rng + ?Sized>(law: &AlphaKappaMu, rng: &mut R) -> f64 {
    HopSampler::new(&(*law).into())
        .expect("mu*kappa is positive and bounded")
        .draw(rng)
}

pub fn sample_extreme<R: Rng + ?Sized>(law: &AlphaKappaMuExtreme, rng: &mut R) -> f64 {
    HopSampler::new(&(*law).into())
        .expect("m is positive and bounded")
        .draw(rng)
}

/// Draws end-to-end SNRs of a chain: 0 when a relay hop is at or below
/// γ_th, otherwise a draw of the last hop.
#[derive(Debug, Clone)]
pub struct ChainSampler {
    hops: Vec<HopSampler>,
    gamma_th: f64,
}

impl ChainSampler {
    pub fn new(chain: &HopChain) -> Result<Self> {
        Ok(ChainSampler {
            hops: chain.hops().iter().map(HopSampler::new).collect::<Result<Vec<_>>>()?,
            gamma_th: chain.gamma_th(),
        })
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let last = self.hops.len() - 1;
        for k in 0..last {
            if self.hops[k].draw(rng) <= self.gamma_th {
                return 0.0;
            }
        }
        self.hops[last].draw(rng)
    }
}
