//! Nuttall Q-function 𝒬_{M,N}(a, b) = ∫_b^∞ x^M e^{−(x²+a²)/2} I_N(ax) dx.

use super::bessel::ln_bessel_i_unchecked;
use crate::error::{domain, Result};
use crate::numerics::quad::{integrate, integrate_to_infinity, QuadSpec};

/// 𝒬_{M,N}(a, b) for M ≥ 0, N ≥ −1, a > 0, b ≥ 0, by adaptive quadrature
/// of the log-domain integrand.
pub fn nuttall_q(m: f64, n: f64, a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain("nuttall_q", format!("a = {a} must be positive")));
    }
    if !(m >= 0.0) || !m.is_finite() {
        return Err(domain("nuttall_q", format!("M = {m} must be non-negative")));
    }
    if !(n >= -1.0) || !n.is_finite() {
        return Err(domain("nuttall_q", format!("N = {n} is below -1")));
    }
    if !(b >= 0.0) {
        return Err(domain("nuttall_q", format!("b = {b} must be non-negative")));
    }
    if b.is_infinite() {
        return Ok(0.0);
    }
    // x^M e^{−(x−a)²/2} · e^{−ax} I_N(ax)
    let f = |x: f64| {
        if x <= 0.0 {
            return 0.0;
        }
        let ax = a * x;
        (m * x.ln() - 0.5 * (x - a) * (x - a) + ln_bessel_i_unchecked(n, ax) - ax).exp()
    };
    let spec = QuadSpec::tight();
    // bulk lies around the maximum of x^M e^{−(x−a)²/2}
    let peak = 0.5 * (a + (a * a + 4.0 * m).sqrt());
    let split = peak + 10.0;
    let mut total = 0.0;
    let mut tail_from = b;
    if b < split {
        total += integrate(f, b, split, &spec)?.value;
        tail_from = split;
    }
    total += integrate_to_infinity(f, tail_from, 1.0, &spec)?.value;
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::super::marcum::marcum_q;
    use super::*;

    #[test]
    fn marcum_identity() {
        let (n, a, b) = (1.0_f64, 1.3_f64, 0.7);
        let got = nuttall_q(n + 1.0, n, a, b).unwrap();
        let want = a.powf(n) * marcum_q(n + 1.0, a, b);
        assert!((got - want).abs() < 1e-10, "{got} vs {want}");
    }

    #[test]
    fn full_range_is_unit_for_first_order() {
        let got = nuttall_q(1.0, 0.0, 2.0, 0.0).unwrap();
        assert!((got - 1.0).abs() < 1e-12);
    }

    #[test]
    fn matches_brute_force_oracle() {
        // Plain midpoint rule on a long fine grid with direct Bessel values.
        let (m, n, a, b) = (2.5_f64, 1.2_f64, 1.1_f64, 0.4_f64);
        let steps = 400_000;
        let top = 20.0;
        let h = (top - b) / steps as f64;
        let mut sum = 0.0;
        for i in 0..steps {
            let x = b + (i as f64 + 0.5) * h;
            let i_n = super::super::bessel::bessel_i(n, a * x, false).unwrap();
            sum += x.powf(m) * (-(x * x + a * a) / 2.0).exp() * i_n;
        }
        let want = sum * h;
        let got = nuttall_q(m, n, a, b).unwrap();
        assert!((got / want - 1.0).abs() < 1e-9, "{got} vs {want}");
    }

    #[test]
    fn domain_errors() {
        assert!(nuttall_q(1.0, 0.0, 0.0, 1.0).is_err());
        assert!(nuttall_q(-0.5, 0.0, 1.0, 1.0).is_err());
        assert!(nuttall_q(1.0, -2.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn large_lower_limit_is_small_and_positive() {
        let v = nuttall_q(3.0, 2.0, 2.0, 15.0).unwrap();
        assert!(v > 0.0 && v < 1e-30);
    }
}
