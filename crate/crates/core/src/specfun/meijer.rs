//! Univariate Meijer G-function of real argument via Mellin–Barnes integrals.
//!
//! ```text
//! G^{m,n}_{p,q}(z) = (1/2πi) ∫_L F(s) ds,
//! F(s) = ∏_{j≤m} Γ(b_j − s) ∏_{i≤n} Γ(1 − a_i + s)
//!        / (∏_{j>m} Γ(1 − b_j + s) ∏_{i>n} Γ(a_i − s)) · z^s
//! ```
//!
//! When δ = m + n − (p+q)/2 > 0 the integrand decays exponentially on
//! vertical lines and L is the line Re s = c, summed with the trapezoidal
//! rule. Otherwise, when q > p, L is bent into a loop around the right pole
//! family, on which F decays factorially.

use super::gamma::ln_gamma_complex;
use crate::error::{Error, Result};
use crate::numerics::quad::{integrate, integrate_to_infinity, QuadSpec};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Parameters of G^{m,n}_{p,q}(z | a; b).
#[derive(Debug, Clone, PartialEq)]
pub struct MeijerGSpec {
    pub m: usize,
    pub n: usize,
    pub a_params: Vec<f64>,
    pub b_params: Vec<f64>,
}

impl MeijerGSpec {
    pub fn new(m: usize, n: usize, a_params: Vec<f64>, b_params: Vec<f64>) -> Result<Self> {
        if m > b_params.len() || n > a_params.len() {
            return Err(Error::InvalidParameter(format!(
                "meijer_g needs m <= q and n <= p (m={m}, n={n}, p={}, q={})",
                a_params.len(),
                b_params.len()
            )));
        }
        if a_params.iter().chain(&b_params).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("meijer_g parameters must be finite".into()));
        }
        Ok(MeijerGSpec {
            m,
            n,
            a_params,
            b_params,
        })
    }

    pub fn p(&self) -> usize {
        self.a_params.len()
    }

    pub fn q(&self) -> usize {
        self.b_params.len()
    }

    fn delta(&self) -> f64 {
        (self.m + self.n) as f64 - 0.5 * (self.p() + self.q()) as f64
    }

    /// Abscissa strictly between the two pole families, and the distance from
    /// it to the nearest pole. Within the admissible range the abscissa
    /// minimizes |F(c)|, which keeps cancellation along the contour small.
    fn abscissa(&self, z: f64) -> Result<(f64, f64)> {
        let left = self.a_params[..self.n]
            .iter()
            .map(|a| a - 1.0)
            .fold(f64::NEG_INFINITY, f64::max);
        let right = self.b_params[..self.m].iter().copied().fold(f64::INFINITY, f64::min);
        if left >= right {
            return Err(Error::PoleSeparation {
                detail: format!("rightmost left pole {left} >= leftmost right pole {right}"),
            });
        }
        let reach = 2.0 * z.ln().abs() + 2.0;
        let (lo, hi) = match (left.is_finite(), right.is_finite()) {
            (true, true) => {
                let pad = 0.05 * (right - left);
                (left + pad, right - pad)
            }
            (true, false) => (left + 0.5, left + 0.5 + reach),
            (false, true) => (right - 0.5 - reach, right - 0.5),
            (false, false) => (-reach, reach),
        };
        let ln_z = z.ln();
        let cost = |c: f64| self.integrand(Complex64::new(c, 0.0), ln_z).norm().ln();
        let c = golden_min(cost, lo, hi);
        let dist = (c - left).min(right - c).min(1.0);
        Ok((c, dist))
    }

    fn integrand(&self, s: Complex64, ln_z: f64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let mut ln_num = s * ln_z;
        for &b in &self.b_params[..self.m] {
            ln_num += ln_gamma_complex(b - s);
        }
        for &a in &self.a_params[..self.n] {
            ln_num += ln_gamma_complex(one - a + s);
        }
        let mut ln_den = Complex64::new(0.0, 0.0);
        for &b in &self.b_params[self.m..] {
            ln_den += ln_gamma_complex(one - b + s);
        }
        for &a in &self.a_params[self.n..] {
            ln_den += ln_gamma_complex(a - s);
        }
        if ln_den.re.is_infinite() {
            // a denominator Gamma sits on a pole
            return Complex64::new(0.0, 0.0);
        }
        (ln_num - ln_den).exp()
    }
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..60 {
        if f1.is_nan() || f1 > f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

const TAIL_RATIO: f64 = 1e-14;
const AGREEMENT: f64 = 1e-9;
const HEIGHT_CAP: f64 = 5_000.0;

/// G^{m,n}_{p,q}(z | a; b) for z > 0.
pub fn meijer_g(spec: &MeijerGSpec, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain {
            op: "meijer_g",
            detail: format!("z = {z} must be positive and finite"),
        });
    }
    let (c, gap) = spec.abscissa(z)?;
    if spec.delta() > 0.0 {
        vertical(spec, z, c, gap)
    } else if spec.q() > spec.p() {
        loop_contour(spec, z, c, gap)
    } else {
        Err(Error::Convergence {
            op: "meijer_g",
            detail: format!(
                "no decaying contour for m={}, n={}, p={}, q={}",
                spec.m,
                spec.n,
                spec.p(),
                spec.q()
            ),
        })
    }
}

fn vertical(spec: &MeijerGSpec, z: f64, c: f64, gap: f64) -> Result<f64> {
    let ln_z = z.ln();
    let f = |t: f64| spec.integrand(Complex64::new(c, t), ln_z);
    let mut h = gap.min(0.5);
    let mut prev = trapezoid(&f, h)?;
    for _ in 0..16 {
        h *= 0.5;
        let next = trapezoid(&f, h)?;
        let diff = (next.0 - prev.0).abs();
        if diff <= AGREEMENT * next.0.abs() || diff <= 1e-15 * next.1 {
            return Ok(next.0);
        }
        prev = next;
    }
    Err(Error::Convergence {
        op: "meijer_g",
        detail: format!("trapezoid refinement did not settle at z={z}, last step {h:e}"),
    })
}

/// Trapezoidal sum over the full line with step h; returns the value and
/// the accumulated magnitude Σ|terms| (both scaled by h/2π).
fn trapezoid<F: Fn(f64) -> Complex64>(f: &F, h: f64) -> Result<(f64, f64)> {
    let f0 = f(0.0).re;
    let mut sum = f0;
    let mut mag = f0.abs();
    let mut k = 1.0;
    let mut quiet = 0;
    loop {
        let t = k * h;
        if t > HEIGHT_CAP {
            return Err(Error::Convergence {
                op: "meijer_g",
                detail: format!("integrand tail still above {TAIL_RATIO:e} at height {HEIGHT_CAP}"),
            });
        }
        let v = f(t);
        if !v.re.is_finite() {
            return Err(Error::NonFinite { op: "meijer_g", at: t });
        }
        sum += 2.0 * v.re;
        mag += 2.0 * v.norm();
        if v.norm() < TAIL_RATIO * mag {
            quiet += 1;
            if quiet >= 4 && t > 2.0 {
                break;
            }
        } else {
            quiet = 0;
        }
        k += 1.0;
    }
    let scale = h / (2.0 * PI);
    Ok((sum * scale, mag * scale))
}

/// Loop from +∞ − ih to c − ih, up to c + ih, back out to +∞ + ih. By
/// conjugate symmetry G = (1/π)[∫_c^∞ Im F(x + ih) dx + ∫_0^h Re F(c + it) dt].
fn loop_contour(spec: &MeijerGSpec, z: f64, c: f64, gap: f64) -> Result<f64> {
    let ln_z = z.ln();
    let h = 0.5;
    let qs = QuadSpec::new(1e-11, 1e-15, 4000)?;
    let horizontal = |x: f64| spec.integrand(Complex64::new(x, h), ln_z).im;
    let vertical = |t: f64| spec.integrand(Complex64::new(c, t), ln_z).re;
    let near = integrate(horizontal, c, c + 10.0 + z.abs().ln().max(0.0), &qs)?;
    let far = integrate_to_infinity(horizontal, c + 10.0 + z.abs().ln().max(0.0), 1.0 + gap, &qs)?;
    let up = integrate(vertical, 0.0, h, &qs)?;
    Ok((near.value + far.value + up.value) / PI)
}
