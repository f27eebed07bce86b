//! Confluent hypergeometric function Φ(a; b; z) = ₁F₁(a; b; z) and its
//! regularized form Φ(a; b; z)/Γ(b).

use super::gamma::{ln_gamma_sign, rgamma};
use crate::error::{domain, Error, Result};

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Signed logarithm: value = sign · e^{ln}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLn {
    pub ln: f64,
    pub sign: f64,
}

impl SignedLn {
    pub fn value(self) -> f64 {
        self.sign * self.ln.exp()
    }
}

/// ln|Φ(a; b; z)| with sign. `b` must not be a non-positive integer.
pub fn ln_kummer_m(a: f64, b: f64, z: f64) -> Result<SignedLn> {
    if is_nonpositive_integer(b) {
        return Err(domain("kummer_m", format!("b = {b} is a non-positive integer")));
    }
    if !(a.is_finite() && b.is_finite() && z.is_finite()) {
        return Err(domain("kummer_m", "non-finite argument"));
    }
    if z == 0.0 || a == 0.0 {
        return Ok(SignedLn { ln: 0.0, sign: 1.0 });
    }
    if z < 0.0 {
        // Kummer transformation Φ(a; b; z) = e^z Φ(b − a; b; −z)
        let inner = ln_series(b - a, b, -z)?;
        return Ok(SignedLn {
            ln: inner.ln + z,
            sign: inner.sign,
        });
    }
    ln_series(a, b, z)
}

/// Term-by-term summation with a running log scale so that e^{700}-sized
/// partial sums never overflow.
fn ln_series(a: f64, b: f64, z: f64) -> Result<SignedLn> {
    let mut sum = 1.0_f64;
    let mut term = 1.0_f64;
    let mut ln_scale = 0.0_f64;
    let mut k = 0.0_f64;
    let polynomial = is_nonpositive_integer(a);
    loop {
        let ratio = (a + k) * z / ((b + k) * (k + 1.0));
        term *= ratio;
        sum += term;
        k += 1.0;
        if term == 0.0 {
            break;
        }
        if sum.abs() > 1e250 {
            term /= 1e250;
            sum /= 1e250;
            ln_scale += 250.0 * std::f64::consts::LN_10;
        }
        let settled = k > -a && k > -b && ratio.abs() < 1.0;
        if settled && term.abs() < 1e-17 * sum.abs() {
            break;
        }
        if k > 1e6 {
            return Err(Error::Convergence {
                op: "kummer_m",
                detail: format!("series did not settle for a={a}, b={b}, z={z}"),
            });
        }
        if polynomial && k > -a {
            break;
        }
    }
    if sum == 0.0 {
        return Ok(SignedLn {
            ln: f64::NEG_INFINITY,
            sign: 1.0,
        });
    }
    Ok(SignedLn {
        ln: ln_scale + sum.abs().ln(),
        sign: sum.signum(),
    })
}

/// Φ(a; b; z). Errors with `Domain` when b ∈ {0, −1, −2, …} and `Overflow`
/// when the value exceeds the f64 range.
pub fn kummer_m(a: f64, b: f64, z: f64) -> Result<f64> {
    let s = ln_kummer_m(a, b, z)?;
    let v = s.value();
    if !v.is_finite() {
        return Err(Error::Overflow {
            op: "kummer_m",
            detail: format!("a={a}, b={b}, z={z}"),
        });
    }
    Ok(v)
}

/// ln|Φ̃(a; b; z)| with sign, where Φ̃ = Φ/Γ(b) continued to every real b.
pub fn ln_kummer_m_regularized(a: f64, b: f64, z: f64) -> Result<SignedLn> {
    if is_nonpositive_integer(b) {
        // Φ̃(a; −n; z) = (a)_{n+1} z^{n+1} / (n+1)! · Φ(a+n+1; n+2; z)
        let n = -b;
        let mut poch = 1.0;
        for i in 0..=(n as u64) {
            poch *= a + i as f64;
        }
        if poch == 0.0 || z == 0.0 {
            return Ok(SignedLn {
                ln: f64::NEG_INFINITY,
                sign: 1.0,
            });
        }
        let (lg, _) = ln_gamma_sign(n + 2.0);
        let zpow_sign = if z < 0.0 && (n as u64 + 1) % 2 == 1 { -1.0 } else { 1.0 };
        let inner = ln_kummer_m(a + n + 1.0, n + 2.0, z)?;
        return Ok(SignedLn {
            ln: poch.abs().ln() + (n + 1.0) * z.abs().ln() - lg + inner.ln,
            sign: poch.signum() * zpow_sign * inner.sign,
        });
    }
    let m = ln_kummer_m(a, b, z)?;
    let (lg, gsign) = ln_gamma_sign(b);
    Ok(SignedLn {
        ln: m.ln - lg,
        sign: m.sign * gsign,
    })
}

/// Φ̃(a; b; z) = Φ(a; b; z)/Γ(b), finite for every real b.
pub fn kummer_m_regularized(a: f64, b: f64, z: f64) -> Result<f64> {
    if !is_nonpositive_integer(b) && b < 170.0 && z.abs() < 1.0 {
        // cheap path, no log detour
        return Ok(kummer_m(a, b, z)? * rgamma(b));
    }
    let s = ln_kummer_m_regularized(a, b, z)?;
    let v = s.value();
    if !v.is_finite() {
        return Err(Error::Overflow {
            op: "kummer_m_regularized",
            detail: format!("a={a}, b={b}, z={z}"),
        });
    }
    Ok(v)
}
