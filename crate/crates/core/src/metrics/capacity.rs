//! Capacity under the four adaptive-transmission policies, in bit/s for
//! bandwidth B (per unit bandwidth when B = 1). Every policy shares the
//! chain's time among its n hops, hence the common factor 1/n.
//!
//! - ORA (rate adaptation): E[log₂(1+γ)] = (1/ln 2) ∫ S(γ)/(1+γ) dγ.
//! - OPRA (power and rate): (1/ln 2) ∫_{γ_o}^∞ S(γ)/γ dγ, where the cutoff
//!   γ_o solves ∫_{γ_o}^∞ (1/γ_o − 1/γ) f(γ) dγ = 1.
//! - CIFR (full inversion): log₂(1 + 1/E[1/γ]).
//! - TIFR (truncated inversion): log₂(1 + 1/J) · S(γ_o), J = ∫_{γ_o}^∞ f/γ.
//!
//! S is the end-to-end survival Ā S_n and f the continuous density Ā f_n.

use super::metric_spec;
use crate::channel::FadingLaw;
use crate::error::{convergence, domain, Error, Result};
use crate::numerics::{integrate_scaled, try_fixed_point, FixedPointSpec};
use crate::specfun::{meijer_g, nuttall_q, MeijerGSpec};
use crate::system::HopChain;
use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CapacityScheme {
    Ora,
    Opra,
    Cifr,
    Tifr,
}

impl CapacityScheme {
    pub const ALL: [CapacityScheme; 4] = [
        CapacityScheme::Opra,
        CapacityScheme::Ora,
        CapacityScheme::Tifr,
        CapacityScheme::Cifr,
    ];
}

impl fmt::Display for CapacityScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CapacityScheme::Ora => "ora",
            CapacityScheme::Opra => "opra",
            CapacityScheme::Cifr => "cifr",
            CapacityScheme::Tifr => "tifr",
        })
    }
}

impl FromStr for CapacityScheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ora" => Ok(CapacityScheme::Ora),
            "opra" => Ok(CapacityScheme::Opra),
            "cifr" => Ok(CapacityScheme::Cifr),
            "tifr" => Ok(CapacityScheme::Tifr),
            _ => Err(Error::InvalidParameter(format!("unknown capacity scheme `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityResult {
    pub scheme: CapacityScheme,
    pub value: f64,
    /// γ_o for OPRA and TIFR.
    pub cutoff: Option<f64>,
    /// Set when E[1/γ] diverges and CIFR is reported as 0.
    pub divergent_inverse_moment: bool,
}

impl CapacityResult {
    fn new(scheme: CapacityScheme, value: f64, cutoff: Option<f64>) -> Self {
        CapacityResult {
            scheme,
            value,
            cutoff,
            divergent_inverse_moment: false,
        }
    }
}

fn check_bandwidth(bandwidth: f64) -> Result<()> {
    if bandwidth > 0.0 && bandwidth.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "bandwidth {bandwidth} must be positive"
        )))
    }
}

fn law_scales(law: &FadingLaw) -> Vec<f64> {
    let g = law.mean_snr();
    vec![
        1.0,
        g,
        g * 0.01f64.powf(2.0 / law.alpha()),
        g * 10.0f64.powf(2.0 / law.alpha()),
    ]
}

/// ORA capacity through the survival function.
pub fn capacity_ora(chain: &HopChain, bandwidth: f64) -> Result<CapacityResult> {
    check_bandwidth(bandwidth)?;
    let abar = chain.prefix_survival();
    let n = chain.n() as f64;
    if abar == 0.0 {
        return Ok(CapacityResult::new(CapacityScheme::Ora, 0.0, None));
    }
    let last = chain.last();
    let q = integrate_scaled(
        |g| last.survival(g) / (1.0 + g),
        0.0,
        1.0,
        &law_scales(last),
        &metric_spec(),
    )?;
    Ok(CapacityResult::new(
        CapacityScheme::Ora,
        bandwidth / (n * LN_2) * abar * q.value,
        None,
    ))
}

/// ORA capacity straight from the density, (B/n) Ā ∫ log₂(1+γ) f_n dγ.
pub fn capacity_ora_pdf_route(chain: &HopChain, bandwidth: f64) -> Result<f64> {
    check_bandwidth(bandwidth)?;
    let q = chain
        .last()
        .expect_continuous(|g| g.ln_1p(), 0.0, &[1.0], &metric_spec())?;
    Ok(bandwidth / (chain.n() as f64 * LN_2) * chain.prefix_survival() * q.value)
}

/// (S(x), J(x)) = (Ā S_n(x), Ā ∫_x^∞ f_n(γ)/γ dγ).
fn survival_and_inverse_tail(chain: &HopChain, x: f64) -> Result<(f64, f64)> {
    let abar = chain.prefix_survival();
    let last = chain.last();
    let j = last.expect_continuous(|g| 1.0 / g, x, &[], &metric_spec())?.value;
    Ok((abar * last.survival(x), abar * j))
}

/// S(γ_o)/γ_o − J(γ_o) − 1, the cutoff condition.
pub fn opra_residual(chain: &HopChain, gamma_o: f64) -> Result<f64> {
    if !(gamma_o > 0.0) {
        return Err(domain("opra_residual", format!("cutoff {gamma_o} must be positive")));
    }
    let (s, j) = survival_and_inverse_tail(chain, gamma_o)?;
    Ok(s / gamma_o - j - 1.0)
}

/// OPRA cutoff γ_o ∈ (0, 1]: the fixed point of ξ(x) = S(x)/(1 + J(x)).
/// Errors when the chain never delivers a positive SNR.
pub fn opra_cutoff(chain: &HopChain, tol: f64) -> Result<f64> {
    if chain.prefix_survival() == 0.0 {
        return Err(domain("opra_cutoff", "chain is in outage with probability one"));
    }
    let xi = |x: f64| -> Result<f64> {
        let x = x.max(f64::MIN_POSITIVE);
        let (s, j) = survival_and_inverse_tail(chain, x)?;
        Ok(s / (1.0 + j))
    };
    let g = try_fixed_point(xi, 1.0, FixedPointSpec { tol, max_iter: 500 })?;
    if !(g > 0.0) {
        return Err(convergence("opra_cutoff", "iteration collapsed to zero"));
    }
    Ok(g)
}

/// OPRA capacity with the cutoff from [`opra_cutoff`] at tolerance 1e-12.
pub fn capacity_opra(chain: &HopChain, bandwidth: f64) -> Result<CapacityResult> {
    check_bandwidth(bandwidth)?;
    if chain.prefix_survival() == 0.0 {
        return Ok(CapacityResult::new(CapacityScheme::Opra, 0.0, None));
    }
    let g0 = opra_cutoff(chain, 1e-12)?;
    let last = chain.last();
    let mut scales = law_scales(last);
    scales.push(4.0 * g0);
    let q = integrate_scaled(|g| last.survival(g) / g, g0, 1.0, &scales, &metric_spec())?;
    let n = chain.n() as f64;
    Ok(CapacityResult::new(
        CapacityScheme::Opra,
        bandwidth / (n * LN_2) * chain.prefix_survival() * q.value,
        Some(g0),
    ))
}

/// OPRA capacity from the density, (B/(n ln 2)) Ā ∫_{γ_o}^∞ ln(γ/γ_o) f_n dγ.
pub fn capacity_opra_pdf_route(chain: &HopChain, bandwidth: f64, gamma_o: f64) -> Result<f64> {
    check_bandwidth(bandwidth)?;
    let q = chain
        .last()
        .expect_continuous(|g| (g / gamma_o).ln(), gamma_o, &[], &metric_spec())?;
    Ok(bandwidth / (chain.n() as f64 * LN_2) * chain.prefix_survival() * q.value)
}

/// E[1/γ] of the end-to-end SNR by quadrature. Errors when it diverges:
/// a point mass at zero, or αμ ≤ 2 on the last hop.
pub fn cifr_inverse_moment(chain: &HopChain) -> Result<f64> {
    check_invertible(chain)?;
    let q = chain
        .last()
        .expect_continuous_pow(|g| 1.0 / g, 0.0, -1.0, &[], &metric_spec())?;
    Ok(chain.prefix_survival() * q.value)
}

fn check_invertible(chain: &HopChain) -> Result<()> {
    if chain.end_point_mass() > 0.0 {
        return Err(domain(
            "cifr_inverse_moment",
            "point mass at zero SNR makes E[1/gamma] infinite",
        ));
    }
    if let FadingLaw::Akm(l) = chain.last() {
        if l.alpha() * l.mu() <= 2.0 {
            return Err(domain(
                "cifr_inverse_moment",
                format!("alpha*mu = {} <= 2 makes E[1/gamma] infinite", l.alpha() * l.mu()),
            ));
        }
    }
    Ok(())
}

/// E[1/γ] through the Meijer-G closed form
///
/// ```text
/// E[1/γ] = 2πK / (α σ^{ω−2/α}) · G^{1,1}_{2,3}(μκ | 1+2/α−ω, μ/2 ; ω−1, 1−ω, μ/2).
/// ```
pub fn cifr_inverse_moment_meijer(chain: &HopChain) -> Result<f64> {
    check_invertible(chain)?;
    let FadingLaw::Akm(l) = chain.last() else {
        return Err(domain("cifr_inverse_moment_meijer", "needs an alpha-kappa-mu last hop"));
    };
    let (a, w, mu) = (l.alpha(), l.omega(), l.mu());
    let spec = MeijerGSpec::new(
        1,
        1,
        vec![1.0 + 2.0 / a - w, mu / 2.0],
        vec![w - 1.0, 1.0 - w, mu / 2.0],
    )?;
    let g = meijer_g(&spec, mu * l.kappa())?;
    let ln_pref = (2.0 * PI).ln() + l.ln_k() - a.ln() - (w - 2.0 / a) * l.sigma().ln();
    Ok(chain.prefix_survival() * ln_pref.exp() * g)
}

/// CIFR capacity; 0 with `divergent_inverse_moment` set when E[1/γ] = ∞.
pub fn capacity_cifr(chain: &HopChain, bandwidth: f64) -> Result<CapacityResult> {
    check_bandwidth(bandwidth)?;
    match cifr_inverse_moment(chain) {
        Ok(inv) => Ok(CapacityResult::new(
            CapacityScheme::Cifr,
            bandwidth / chain.n() as f64 * (1.0 / inv).ln_1p() / LN_2,
            None,
        )),
        Err(Error::Domain { .. }) => Ok(CapacityResult {
            scheme: CapacityScheme::Cifr,
            value: 0.0,
            cutoff: None,
            divergent_inverse_moment: true,
        }),
        Err(e) => Err(e),
    }
}

/// J = Ā ∫_{γ_o}^∞ f_n(γ)/γ dγ by quadrature.
pub fn tifr_integral(chain: &HopChain, gamma_o: f64) -> Result<f64> {
    if !(gamma_o > 0.0) {
        return Err(domain("tifr_integral", format!("cutoff {gamma_o} must be positive")));
    }
    Ok(survival_and_inverse_tail(chain, gamma_o)?.1)
}

/// J through the Nuttall Q-function (α-κ-μ last hop with αμ > 4):
///
/// ```text
/// J = Ā (2σ)^{2/α} / (2μκ)^{ω−1} · 𝒬_{μ−4/α, μ−1}(√(2μκ), √(2σ γ_o^{α/2})).
/// ```
pub fn tifr_integral_nuttall(chain: &HopChain, gamma_o: f64) -> Result<f64> {
    let FadingLaw::Akm(l) = chain.last() else {
        return Err(domain("tifr_integral_nuttall", "the Extreme law has no Nuttall form"));
    };
    let (a, mu, k, s) = (l.alpha(), l.mu(), l.kappa(), l.sigma());
    if a * mu <= 4.0 {
        return Err(domain(
            "tifr_integral_nuttall",
            format!("alpha*mu = {} must exceed 4", a * mu),
        ));
    }
    let q = nuttall_q(
        mu - 4.0 / a,
        mu - 1.0,
        (2.0 * mu * k).sqrt(),
        (2.0 * s * gamma_o.powf(0.5 * a)).sqrt(),
    )?;
    let ln_pref = (2.0 / a) * (2.0 * s).ln() - (l.omega() - 1.0) * (2.0 * mu * k).ln();
    Ok(chain.prefix_survival() * ln_pref.exp() * q)
}

/// TIFR capacity at cutoff `gamma_o`.
pub fn capacity_tifr(chain: &HopChain, bandwidth: f64, gamma_o: f64) -> Result<CapacityResult> {
    check_bandwidth(bandwidth)?;
    if chain.prefix_survival() == 0.0 {
        return Ok(CapacityResult::new(CapacityScheme::Tifr, 0.0, Some(gamma_o)));
    }
    let (s, j) = survival_and_inverse_tail(chain, gamma_o)?;
    let value = if j > 0.0 {
        bandwidth / chain.n() as f64 * (1.0 / j).ln_1p() / LN_2 * s
    } else {
        0.0
    };
    Ok(CapacityResult::new(CapacityScheme::Tifr, value, Some(gamma_o)))
}

/// One scheme; TIFR uses the OPRA cutoff.
pub fn capacity(chain: &HopChain, bandwidth: f64, scheme: CapacityScheme) -> Result<CapacityResult> {
    match scheme {
        CapacityScheme::Ora => capacity_ora(chain, bandwidth),
        CapacityScheme::Opra => capacity_opra(chain, bandwidth),
        CapacityScheme::Cifr => capacity_cifr(chain, bandwidth),
        CapacityScheme::Tifr => {
            if chain.prefix_survival() == 0.0 {
                return capacity_tifr(chain, bandwidth, 1.0);
            }
            capacity_tifr(chain, bandwidth, opra_cutoff(chain, 1e-12)?)
        }
    }
}

/// All four schemes in the order OPRA, ORA, TIFR, CIFR, with TIFR at the
/// OPRA cutoff.
pub fn capacity_all(chain: &HopChain, bandwidth: f64) -> Result<[CapacityResult; 4]> {
    let opra = capacity_opra(chain, bandwidth)?;
    let ora = capacity_ora(chain, bandwidth)?;
    let tifr = match opra.cutoff {
        Some(g0) => capacity_tifr(chain, bandwidth, g0)?,
        None => capacity_tifr(chain, bandwidth, 1.0)?,
    };
    let cifr = capacity_cifr(chain, bandwidth)?;
    Ok([opra, ora, tifr, cifr])
}
