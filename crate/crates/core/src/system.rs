//! End-to-end SNR of an n-hop decode-and-forward chain.
//!
//! The chain is cut as soon as any of the first n−1 hops drops to or below
//! γ_th; otherwise the end-to-end SNR is the last hop's SNR. With
//! Ā = ∏_{k<n} (1 − F_k(γ_th)) and A = 1 − Ā:
//!
//! ```text
//! f_e(γ) = A δ(γ) + Ā f_n(γ),   F_e(γ) = 1 − Ā (1 − F_n(γ)).
//! ```

use crate::channel::FadingLaw;
use crate::error::{Error, Result};
use crate::numerics::QuadSpec;

#[derive(Debug, Clone, PartialEq)]
pub struct HopChain {
    hops: Vec<FadingLaw>,
    gamma_th: f64,
    survive: f64,
}

impl HopChain {
    /// `gamma_th` is the linear outage threshold applied at the relays.
    pub fn new(hops: Vec<FadingLaw>, gamma_th: f64) -> Result<Self> {
        if hops.is_empty() {
            return Err(Error::InvalidParameter("a chain needs at least one hop".into()));
        }
        if !(gamma_th >= 0.0) || gamma_th.is_nan() {
            return Err(Error::InvalidParameter(format!("gamma_th = {gamma_th} must be >= 0")));
        }
        let survive = hops[..hops.len() - 1].iter().map(|h| h.survival(gamma_th)).product();
        Ok(HopChain {
            hops,
            gamma_th,
            survive,
        })
    }

    pub fn single(law: impl Into<FadingLaw>) -> Self {
        Self::new(vec![law.into()], 0.0).expect("one hop with zero threshold is always valid")
    }

    pub fn hops(&self) -> &[FadingLaw] {
        &self.hops
    }

    pub fn n(&self) -> usize {
        self.hops.len()
    }

    pub fn gamma_th(&self) -> f64 {
        self.gamma_th
    }

    pub fn last(&self) -> &FadingLaw {
        self.hops.last().expect("chain is never empty")
    }

    /// A: probability that one of the first n−1 hops is in outage.
    pub fn prefix_outage(&self) -> f64 {
        1.0 - self.survive
    }

    /// Ā = 1 − A, computed as a product so it stays accurate when tiny.
    pub fn prefix_survival(&self) -> f64 {
        self.survive
    }

    /// Probability that the end-to-end SNR is exactly zero.
    pub fn end_point_mass(&self) -> f64 {
        self.prefix_outage() + self.survive * self.last().point_mass()
    }

    /// Continuous part of the end-to-end density.
    pub fn end_pdf(&self, gamma: f64) -> f64 {
        self.survive * self.last().pdf(gamma)
    }

    pub fn end_survival(&self, gamma: f64) -> f64 {
        self.survive * self.last().survival(gamma)
    }

    pub fn end_cdf(&self, gamma: f64) -> f64 {
        self.prefix_outage() + self.survive * self.last().cdf(gamma)
    }

    /// E[γ^r] = Ā E[γ_n^r].
    pub fn end_moment(&self, r: f64) -> Result<f64> {
        Ok(self.survive * self.last().moment(r)?)
    }

    /// E[e^{−sγ}] including the point mass.
    pub fn end_mgf(&self, s: f64) -> Result<f64> {
        self.end_mgf_with(s, &QuadSpec::default())
    }

    pub fn end_mgf_with(&self, s: f64, spec: &QuadSpec) -> Result<f64> {
        if !(s >= 0.0) {
            return Err(Error::InvalidParameter(format!("mgf argument {s} must be >= 0")));
        }
        if s == 0.0 {
            return Ok(1.0);
        }
        let cont = self
            .last()
            .expect_continuous(|g| (-s * g).exp(), 0.0, &[1.0 / s], spec)?
            .value;
        Ok(self.end_point_mass() + self.survive * cont)
    }

    /// Same chain with every hop's γ̄ multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let hops = self
            .hops
            .iter()
            .map(|h| h.with_mean_snr(h.mean_snr() * factor))
            .collect::<Result<Vec<_>>>()?;
        Self::new(hops, self.gamma_th)
    }
}
