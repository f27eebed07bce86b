//! Gamma-family helpers: real Gamma/lnGamma, reciprocal Gamma, the
//! regularized incomplete gamma pair, complex lnGamma and erfc.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Γ(x) for real x. Poles (non-positive integers) return ±inf or NaN.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// ln|Γ(x)|.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// ln|Γ(x)| together with the sign of Γ(x).
pub fn ln_gamma_sign(x: f64) -> (f64, f64) {
    let (lg, sign) = libm::lgamma_r(x);
    (lg, f64::from(sign))
}

/// 1/Γ(x), which is entire: zero at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    if x > 170.0 {
        let (lg, _) = ln_gamma_sign(x);
        return (-lg).exp();
    }
    1.0 / gamma(x)
}

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Regularized incomplete gamma functions `(P(s, x), Q(s, x))` for s > 0, x ≥ 0.
///
/// The smaller of the two is computed directly so it keeps relative accuracy;
/// the other is its complement.
pub fn gamma_pq(s: f64, x: f64) -> (f64, f64) {
    debug_assert!(s > 0.0 && x >= 0.0);
    if x == 0.0 {
        return (0.0, 1.0);
    }
    if x.is_infinite() {
        return (1.0, 0.0);
    }
    let ln_pref = s * x.ln() - x - ln_gamma(s);
    if x < s + 1.0 {
        // Series for P.
        let mut term = 1.0 / s;
        let mut sum = term;
        let mut n = 1.0;
        loop {
            term *= x / (s + n);
            sum += term;
            if term < sum * 1e-17 || n > 100_000.0 {
                break;
            }
            n += 1.0;
        }
        let p = (ln_pref + sum.ln()).exp();
        (p, 1.0 - p)
    } else {
        // Modified Lentz continued fraction for Q.
        let tiny = 1e-300;
        let mut b = x + 1.0 - s;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        let mut i = 1.0;
        loop {
            let an = -i * (i - s);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < 1e-16 || i > 100_000.0 {
                break;
            }
            i += 1.0;
        }
        let q = (ln_pref + h.ln()).exp();
        (1.0 - q, q)
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal-ish complex lnΓ(z). Only `exp` of sums of these values is ever
/// used, so the imaginary part is correct modulo 2π.
pub fn ln_gamma_complex(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Reflection: Γ(z)Γ(1 − z) = π / sin(πz).
        let ln_pi = Complex64::new(PI.ln(), 0.0);
        return ln_pi - ln_sin_pi(z) - ln_gamma_complex(Complex64::new(1.0, 0.0) - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// ln sin(πz) without overflow for large |Im z|.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let w = z * PI;
    let i = Complex64::i();
    if w.im >= 0.0 {
        // sin w = e^{-iw} (e^{2iw} - 1) / (2i), |e^{2iw}| ≤ 1
        -i * w + ((2.0 * i * w).exp() - 1.0).ln() - (2.0 * i).ln()
    } else {
        // sin w = e^{iw} (1 - e^{-2iw}) / (2i)
        i * w + (1.0 - (-2.0 * i * w).exp()).ln() - (2.0 * i).ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_ln_gamma_matches_real_axis() {
        for &x in &[0.3, 1.0, 2.5, 7.25, 31.0, -0.5, -2.7] {
            let lg = ln_gamma_complex(Complex64::new(x, 0.0));
            let (real, sign) = ln_gamma_sign(x);
            assert!((lg.re - real).abs() < 1e-13 * real.abs().max(1.0), "x={x}");
            assert!((lg.im.cos() - sign).abs() < 1e-12);
        }
    }

    #[test]
    fn complex_ln_gamma_reflection_and_recurrence() {
        // |Γ(1/2 + iy)|² = π / cosh(πy)
        for &y in &[0.5, 3.0, 12.0, 60.0] {
            let lg = ln_gamma_complex(Complex64::new(0.5, y));
            let expect = 0.5 * (PI.ln() - (PI * y).cosh().ln());
            assert!((lg.re - expect).abs() < 1e-12 * expect.abs().max(1.0), "y={y}");
        }
        // Γ(z + 1) = z Γ(z)
        let z = Complex64::new(-1.3, 4.2);
        let lhs = ln_gamma_complex(z + 1.0).exp();
        let rhs = z * ln_gamma_complex(z).exp();
        assert!((lhs - rhs).norm() < 1e-12 * lhs.norm());
    }

    #[test]
    fn incomplete_gamma_pair() {
        // Exponential special case: Q(1, x) = e^{-x}
        for &x in &[0.01, 0.5, 3.0, 40.0] {
            let (p, q) = gamma_pq(1.0, x);
            assert!((q - (-x).exp()).abs() < 1e-15);
            assert!((p + q - 1.0).abs() < 1e-15);
        }
        // Q(1/2, x) = erfc(√x)
        for &x in &[0.2, 2.0, 25.0] {
            let (_, q) = gamma_pq(0.5, x);
            let e = erfc(x.sqrt());
            assert!((q - e).abs() < 1e-14 * e, "x={x}");
        }
    }

    #[test]
    fn rgamma_is_zero_at_poles() {
        assert_eq!(rgamma(0.0), 0.0);
        assert_eq!(rgamma(-3.0), 0.0);
        assert!((rgamma(3.0) - 0.5).abs() < 1e-16);
    }
}
