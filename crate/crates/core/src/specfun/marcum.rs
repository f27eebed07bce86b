//! Generalized Marcum Q-function for real order ν ≥ 0.
//!
//! Q_ν(a, b) is the survival function at b² of a noncentral chi-square
//! variable with 2ν degrees of freedom and noncentrality a². Writing that
//! variable as a Poisson(a²/2) mixture of Gamma(ν + j) laws gives
//!
//! ```text
//! Q_ν(a, b) = Σ_j e^{−λ} λ^j / j! · Q(ν + j, x),   λ = a²/2, x = b²/2,
//! ```
//!
//! with Q(s, x) the regularized upper incomplete gamma function. At ν = 0
//! the j = 0 component is a point mass at the origin, which yields the
//! zero-order function Q_0(a, b) = Q_1(a, b) − e^{−(a²+b²)/2} I_0(ab).
//!
//! Whichever tail is smaller is summed directly, using the stable direction
//! of the incomplete-gamma recurrence Q(s+1, x) = Q(s, x) + x^s e^{−x}/Γ(s+1).

use super::gamma::{gamma_pq, ln_gamma};

/// Q_ν(a, b). Returns NaN for negative or non-finite arguments.
pub fn marcum_q(nu: f64, a: f64, b: f64) -> f64 {
    marcum_pair(nu, a, b).1
}

/// 1 − Q_ν(a, b), accurate in relative terms when small.
pub fn marcum_p(nu: f64, a: f64, b: f64) -> f64 {
    marcum_pair(nu, a, b).0
}

/// `(1 − Q_ν(a, b), Q_ν(a, b))`.
pub fn marcum_pair(nu: f64, a: f64, b: f64) -> (f64, f64) {
    if !(nu >= 0.0 && a >= 0.0 && b >= 0.0) || !nu.is_finite() || !a.is_finite() {
        return (f64::NAN, f64::NAN);
    }
    if b.is_infinite() {
        return (1.0, 0.0);
    }
    let lam = 0.5 * a * a;
    let x = 0.5 * b * b;
    if x == 0.0 {
        if nu > 0.0 {
            return (0.0, 1.0);
        }
        let mass = (-lam).exp();
        return (mass, -(-lam).exp_m1());
    }
    if lam == 0.0 {
        if nu == 0.0 {
            return (1.0, 0.0);
        }
        return gamma_pq(nu, x);
    }
    if x < nu + lam {
        let p = lower_sum(nu, lam, x);
        (p, 1.0 - p)
    } else {
        let q = upper_sum(nu, lam, x);
        (1.0 - q, q)
    }
}

fn poisson_window(lam: f64) -> (f64, f64) {
    let w = 10.0 + 10.0 * lam.sqrt();
    ((lam - w).floor().max(0.0), (lam + w).ceil())
}

fn ln_poisson(j: f64, lam: f64) -> f64 {
    -lam + j * lam.ln() - ln_gamma(j + 1.0)
}

/// Σ_j p_j P(ν + j, x), walking j downward from the top of the Poisson
/// window to 0 with P(s, x) = P(s+1, x) + x^s e^{−x}/Γ(s+1).
fn lower_sum(nu: f64, lam: f64, x: f64) -> f64 {
    let (_, hi) = poisson_window(lam);
    let ln_x = x.ln();
    let mut p_inc = gamma_pq(nu + hi, x).0;
    let mut ln_pois = ln_poisson(hi, lam);
    let mut sum = ln_pois.exp() * p_inc;
    let mut j = hi - 1.0;
    // ln of x^{ν+j} e^{−x} / Γ(ν+j+1)
    let mut ln_h = (nu + j) * ln_x - x - ln_gamma(nu + j + 1.0);
    while j >= 0.0 {
        p_inc += ln_h.exp();
        ln_pois += ((j + 1.0) / lam).ln();
        sum += ln_pois.exp() * p_inc;
        ln_h += ((nu + j) / x).ln();
        j -= 1.0;
    }
    sum
}

/// Σ_j p_j Q(ν + j, x), walking j upward from the bottom of the Poisson
/// window until the Poisson weights are negligible.
fn upper_sum(nu: f64, lam: f64, x: f64) -> f64 {
    let (lo, _) = poisson_window(lam);
    let ln_x = x.ln();
    let ln_lam = lam.ln();
    let mut j = lo;
    let s0 = nu + j;
    let mut q_inc = if s0 > 0.0 { gamma_pq(s0, x).1 } else { 0.0 };
    let mut ln_pois = ln_poisson(j, lam);
    // ln of x^{ν+j} e^{−x} / Γ(ν+j+1)
    let mut ln_h = s0 * ln_x - x - ln_gamma(s0 + 1.0);
    let mut sum = ln_pois.exp() * q_inc;
    loop {
        q_inc += ln_h.exp();
        j += 1.0;
        ln_pois += ln_lam - j.ln();
        ln_h += ln_x - (nu + j).ln();
        let w = ln_pois.exp();
        sum += w * q_inc;
        if j > lam && (w < 1e-17 * sum || w == 0.0) {
            break;
        }
        if j > lam + 1e6 {
            break;
        }
    }
    sum
}
