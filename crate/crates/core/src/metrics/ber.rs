//! Average bit error rate, exact and low-SNR asymptotic.

use super::{metric_spec, Modulation};
use crate::error::{domain, Result};
use crate::numerics::integrate_scaled;
use crate::specfun::{erfc, ln_gamma};
use crate::system::HopChain;
use std::f64::consts::PI;

/// Number of series terms used when none is given.
pub const DEFAULT_SERIES_ORDER: usize = 10;

/// Average BER for either kind of modulation.
pub fn ber(chain: &HopChain, modulation: Modulation) -> Result<f64> {
    if modulation.coherent() {
        ber_coherent(chain, modulation)
    } else {
        ber_noncoherent(chain, modulation)
    }
}

/// (φ/2)·P(γ = 0) + (φ/2) Ā ∫ erfc(ρ√(γ/2)) f_n(γ) dγ.
pub fn ber_coherent(chain: &HopChain, modulation: Modulation) -> Result<f64> {
    if !modulation.coherent() {
        return Err(domain("ber_coherent", format!("{modulation} is non-coherent")));
    }
    let (phi, rho) = (modulation.phi(), modulation.rho());
    let scale = 2.0 / (rho * rho);
    let cont = chain
        .last()
        .expect_continuous(
            |g| erfc(rho * (0.5 * g).sqrt()),
            0.0,
            &[scale, 20.0 * scale],
            &metric_spec(),
        )?
        .value;
    Ok(0.5 * phi * (chain.end_point_mass() + chain.prefix_survival() * cont))
}

/// Coherent BER through the CDF: integrating by parts moves the derivative
/// onto the erfc kernel, giving ∫ F_c(γ) ρ e^{−ρ²γ/2} / √(2πγ) dγ.
pub fn ber_coherent_cdf_route(chain: &HopChain, modulation: Modulation) -> Result<f64> {
    if !modulation.coherent() {
        return Err(domain("ber_coherent", format!("{modulation} is non-coherent")));
    }
    let (phi, rho) = (modulation.phi(), modulation.rho());
    let last = chain.last();
    let mass = last.point_mass();
    let scale = 2.0 / (rho * rho);
    let q = integrate_scaled(
        |g| {
            let fc = (1.0 - last.survival(g) - mass).max(0.0);
            fc * rho * (-0.5 * rho * rho * g).exp() / (2.0 * PI * g).sqrt()
        },
        0.0,
        last.origin_exponent() + 0.5,
        &[scale, 20.0 * scale, last.mean_snr()],
        &metric_spec(),
    )?;
    Ok(0.5 * phi * (chain.end_point_mass() + chain.prefix_survival() * q.value))
}

/// φ · M_γ(ρ).
pub fn ber_noncoherent(chain: &HopChain, modulation: Modulation) -> Result<f64> {
    if modulation.coherent() {
        return Err(domain("ber_noncoherent", format!("{modulation} is coherent")));
    }
    Ok(modulation.phi() * chain.end_mgf_with(modulation.rho(), &metric_spec())?)
}

/// Non-coherent BER through the CDF: ∫ e^{−ργ} f_c = ρ ∫ e^{−ργ} F_c(γ) dγ.
pub fn ber_noncoherent_cdf_route(chain: &HopChain, modulation: Modulation) -> Result<f64> {
    if modulation.coherent() {
        return Err(domain("ber_noncoherent", format!("{modulation} is coherent")));
    }
    let (phi, rho) = (modulation.phi(), modulation.rho());
    let last = chain.last();
    let mass = last.point_mass();
    let q = integrate_scaled(
        |g| (1.0 - last.survival(g) - mass).max(0.0) * (-rho * g).exp(),
        0.0,
        last.origin_exponent() + 1.0,
        &[1.0 / rho, 30.0 / rho, last.mean_snr()],
        &metric_spec(),
    )?;
    Ok(phi * (chain.end_point_mass() + chain.prefix_survival() * rho * q.value))
}

/// Low-SNR BER from the last hop's Poincaré series with `order` terms:
/// the point-mass term plus Ā Σ d_k · kernel(t_k), with kernel
/// (φ/√π) 2^t Γ(3/2+t) / ((t+1) ρ^{2(t+1)}) for coherent schemes and
/// φ Γ(t+1)/ρ^{t+1} for non-coherent ones.
pub fn ber_asymptotic(chain: &HopChain, modulation: Modulation, order: usize) -> Result<f64> {
    let series = chain
        .last()
        .poincare_series(order)?
        .with_leading_mass(chain.end_point_mass())?;
    let (phi, rho) = (modulation.phi(), modulation.rho());
    let abar = chain.prefix_survival();
    let value = if modulation.coherent() {
        let sum = series.moment_sum(|t| {
            (t * std::f64::consts::LN_2 + ln_gamma(1.5 + t) - (t + 1.0).ln() - 2.0 * (t + 1.0) * rho.ln()).exp()
        });
        0.5 * phi * series.leading_mass() + abar * phi / PI.sqrt() * sum
    } else {
        let sum = series.moment_sum(|t| (ln_gamma(t + 1.0) - (t + 1.0) * rho.ln()).exp());
        phi * series.leading_mass() + abar * phi * sum
    };
    Ok(value)
}
