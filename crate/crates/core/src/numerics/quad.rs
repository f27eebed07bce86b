//! Globally adaptive 21-point Gauss–Kronrod quadrature.
//!
//! Intervals are bisected in order of decreasing error estimate until the
//! summed estimate meets the tolerance. Semi-infinite ranges are mapped to
//! [0, 1) by x = lo + s·t/(1 − t); the Kronrod nodes never touch the
//! endpoints, so integrable endpoint singularities are never evaluated.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Tolerances and work limit for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_subdivisions: 2000,
        }
    }
}

impl QuadSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 1 {
            return Err(Error::InvalidParameter(format!(
                "QuadSpec needs positive tolerances and at least one subdivision \
                 (rel_tol={rel_tol}, abs_tol={abs_tol}, max_subdivisions={max_subdivisions})"
            )));
        }
        Ok(QuadSpec {
            rel_tol,
            abs_tol,
            max_subdivisions,
        })
    }

    pub fn tight() -> Self {
        QuadSpec {
            rel_tol: 1e-12,
            abs_tol: 1e-300,
            max_subdivisions: 4000,
        }
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }
}

/// Result of a quadrature: value and estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub err_estimate: f64,
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7, 9).
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFinite { op: "integrate", at: x })
        }
    };
    let fc = eval(center)?;
    let mut res_k = fc * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (1.0_f64).min((200.0 * err / res_asc).powf(1.5));
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Segment { a, b, value, err })
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, spec: &QuadSpec) -> Result<Quadrature> {
    let first = kronrod(f, a, b)?;
    let mut total = first.value;
    let mut total_err = first.err;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut frozen_err = 0.0;
    let mut splits = 0;
    loop {
        let tol = spec.abs_tol.max(spec.rel_tol * total.abs());
        if total_err + frozen_err <= tol {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        let width = (worst.b - worst.a).abs();
        if width <= 1e3 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE) || mid == worst.a || mid == worst.b {
            // Cannot resolve further; keep its contribution as is.
            frozen_err += worst.err;
            total_err -= worst.err;
            continue;
        }
        if splits >= spec.max_subdivisions {
            return Err(Error::Convergence {
                op: "integrate",
                detail: format!(
                    "{} subdivisions on [{a}, {b}], value {total:e}, error estimate {:e}",
                    spec.max_subdivisions,
                    total_err + frozen_err
                ),
            });
        }
        splits += 1;
        let left = kronrod(f, worst.a, mid)?;
        let right = kronrod(f, mid, worst.b)?;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        if splits % 64 == 0 {
            // re-sum to shed accumulated cancellation
            total = heap.iter().map(|s| s.value).sum();
            total_err = heap.iter().map(|s| s.err).sum();
        }
    }
    let value: f64 = heap.iter().map(|s| s.value).sum();
    let err: f64 = heap.iter().map(|s| s.err).sum::<f64>() + frozen_err;
    Ok(Quadrature {
        value,
        err_estimate: err,
    })
}

/// ∫_lo^hi f(x) dx with `hi` possibly `f64::INFINITY`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, spec: &QuadSpec) -> Result<Quadrature> {
    if hi.is_infinite() {
        return integrate_to_infinity(f, lo, 1.0, spec);
    }
    if lo == hi {
        return Ok(Quadrature {
            value: 0.0,
            err_estimate: 0.0,
        });
    }
    adaptive(&f, lo, hi, spec)
}

/// ∫_lo^∞ f(x) dx through x = lo + scale·t/(1 − t). `scale` should be the
/// length over which f varies (for example a mean SNR).
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, lo: f64, scale: f64, spec: &QuadSpec) -> Result<Quadrature> {
    let g = |t: f64| {
        let u = 1.0 - t;
        let x = lo + scale * t / u;
        if x.is_infinite() {
            return 0.0;
        }
        let y = f(x);
        if y == 0.0 {
            0.0
        } else {
            y * scale / (u * u)
        }
    };
    adaptive(&g, 0.0, 1.0, spec)
}

/// ∫_lo^∞ f(x) dx for an integrand that behaves like x^{p−1} near the
/// origin and varies on the length scales listed in `scales`.
///
/// The range is cut at the scales (filled in so that neighbouring cuts are at
/// most a decade apart). When `lo` is 0 the first piece uses x = v^{1/p},
/// which turns the x^{p−1} behaviour into a constant. The last piece is
/// mapped to [0, 1).
pub fn integrate_scaled<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    p: f64,
    scales: &[f64],
    spec: &QuadSpec,
) -> Result<Quadrature> {
    let mut cuts: Vec<f64> = scales
        .iter()
        .copied()
        .filter(|s| s.is_finite() && *s > lo && *s > 0.0)
        .collect();
    if cuts.is_empty() {
        cuts.push(if lo > 0.0 { 2.0 * lo } else { 1.0 });
    }
    cuts.sort_by(f64::total_cmp);
    let mut filled = vec![cuts[0]];
    for &c in &cuts[1..] {
        let mut last = *filled.last().unwrap();
        if c <= last * (1.0 + 1e-12) {
            continue;
        }
        while c > 10.0 * last {
            last *= 10.0;
            filled.push(last);
        }
        filled.push(c);
    }
    let mut value = 0.0;
    let mut err = 0.0;
    let first = filled[0];
    let head = if lo == 0.0 && p > 0.0 && (p - 1.0).abs() > 1e-12 {
        let inv = 1.0 / p;
        let g = |v: f64| {
            let x = v.powf(inv);
            if x == 0.0 {
                return 0.0;
            }
            f(x) * inv * x / v
        };
        integrate(g, 0.0, first.powf(p), spec)?
    } else {
        integrate(&f, lo, first, spec)?
    };
    value += head.value;
    err += head.err_estimate;
    for w in filled.windows(2) {
        let q = integrate(&f, w[0], w[1], spec)?;
        value += q.value;
        err += q.err_estimate;
    }
    let last = *filled.last().unwrap();
    let tail = integrate_to_infinity(&f, last, last, spec)?;
    value += tail.value;
    err += tail.err_estimate;
    Ok(Quadrature {
        value,
        err_estimate: err,
    })
}
