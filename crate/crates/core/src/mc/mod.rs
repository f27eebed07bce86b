//! Monte-Carlo oracle for the analytic metrics.
//!
//! Trials are split across `streams` independent Xoshiro256++ substreams
//! (period 2²⁵⁶ − 1). Stream i starts from the seed state advanced by i
//! jumps of 2¹²⁸ steps, so streams never overlap. Per-stream sums are
//! compensated and merged in stream order, which makes every estimate
//! bit-identical for a given (seed, streams, trials) whatever the thread
//! count.

mod sampler;

pub use sampler::{sample_akm, sample_extreme, ChainSampler, HopSampler};

use crate::error::{domain, Error, Result};
use crate::metrics::Modulation;
use crate::par::{map_indexed, Exec};
use crate::system::HopChain;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub trials: u64,
    pub seed: u64,
    pub streams: usize,
}

impl McConfig {
    pub fn new(trials: u64, seed: u64, streams: usize) -> Result<Self> {
        if trials == 0 {
            return Err(Error::InvalidParameter("mc trials must be >= 1".into()));
        }
        if streams == 0 {
            return Err(Error::InvalidParameter("mc streams must be >= 1".into()));
        }
        Ok(McConfig { trials, seed, streams })
    }

    /// Generator of stream `index`.
    pub fn stream_rng(&self, index: usize) -> Xoshiro256PlusPlus {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(self.seed);
        for _ in 0..index {
            rng.jump();
        }
        rng
    }

    /// Number of trials run by stream `index`.
    pub fn stream_trials(&self, index: usize) -> u64 {
        let s = self.streams as u64;
        self.trials / s + u64::from((index as u64) < self.trials % s)
    }
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            trials: 1_000_000,
            seed: 0x5eed,
            streams: 16,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: u64,
}

impl Estimate {
    /// |mean − value| in standard errors.
    pub fn z_score(&self, value: f64) -> f64 {
        let d = (self.mean - value).abs();
        if d == 0.0 {
            0.0
        } else {
            d / self.std_error
        }
    }

    pub fn agrees(&self, value: f64, n_se: f64) -> bool {
        self.z_score(value) <= n_se
    }
}

/// Per-trial statistic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum McMetric {
    /// 1{γ ≤ γ_op}.
    Outage { gamma_op: f64 },
    /// Conditional BER of the modulation at γ.
    Ber(Modulation),
    /// B log₂(1+γ)/n.
    Ora { bandwidth: f64 },
    /// E[γ^k]/E[γ]^k − 1 with a delta-method standard error.
    AmountOfFading { order: u32 },
}

impl McMetric {
    fn width(&self) -> usize {
        match self {
            McMetric::AmountOfFading { .. } => 5,
            _ => 2,
        }
    }

    fn features(&self, g: f64, n_hops: f64, out: &mut [f64]) {
        let h = match *self {
            McMetric::Outage { gamma_op } => f64::from(u8::from(g <= gamma_op)),
            McMetric::Ber(m) => m.conditional_ber(g),
            McMetric::Ora { bandwidth } => bandwidth * g.ln_1p() / (n_hops * std::f64::consts::LN_2),
            McMetric::AmountOfFading { order } => {
                let k = order as i32;
                let gk = g.powi(k);
                out.copy_from_slice(&[g, g * g, gk, gk * g, gk * gk]);
                return;
            }
        };
        out[0] = h;
        out[1] = h * h;
    }

    fn finish(&self, sums: &[f64], n: u64) -> Result<Estimate> {
        let nf = n as f64;
        let bessel = if n > 1 { nf / (nf - 1.0) } else { 0.0 };
        match *self {
            McMetric::AmountOfFading { order } => {
                let k = f64::from(order);
                let [m1, m2, mk, mk1, m2k] = [0, 1, 2, 3, 4].map(|i| sums[i] / nf);
                if m1 <= 0.0 {
                    return Err(domain("estimate_metric", "sample mean SNR is zero"));
                }
                let value = mk / m1.powf(k) - 1.0;
                let g1 = -k * mk / m1.powf(k + 1.0);
                let gk = 1.0 / m1.powf(k);
                let v1 = (m2 - m1 * m1) * bessel;
                let vk = (m2k - mk * mk) * bessel;
                let c = (mk1 - m1 * mk) * bessel;
                let var = (g1 * g1 * v1 + 2.0 * g1 * gk * c + gk * gk * vk).max(0.0);
                Ok(Estimate {
                    mean: value,
                    std_error: (var / nf).sqrt(),
                    trials: n,
                })
            }
            _ => {
                let mean = sums[0] / nf;
                let var = ((sums[1] / nf - mean * mean) * bessel).max(0.0);
                Ok(Estimate {
                    mean,
                    std_error: (var / nf).sqrt(),
                    trials: n,
                })
            }
        }
    }
}

/// Neumaier-compensated sum.
#[derive(Debug, Clone, Copy, Default)]
struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// End-to-end SNR draws, stream by stream.
pub fn simulate_chain(chain: &HopChain, cfg: &McConfig, exec: Exec) -> Result<Vec<f64>> {
    let sampler = ChainSampler::new(chain)?;
    let parts = map_indexed(cfg.streams, exec, |i| {
        let mut rng = cfg.stream_rng(i);
        (0..cfg.stream_trials(i))
            .map(|_| sampler.draw(&mut rng))
            .collect::<Vec<_>>()
    });
    Ok(parts.concat())
}

/// Estimates several metrics from one shared set of trials.
pub fn estimate_metrics(chain: &HopChain, cfg: &McConfig, metrics: &[McMetric], exec: Exec) -> Result<Vec<Estimate>> {
    let sampler = ChainSampler::new(chain)?;
    let n_hops = chain.n() as f64;
    let offsets: Vec<usize> = metrics
        .iter()
        .scan(0, |acc, m| {
            let o = *acc;
            *acc += m.width();
            Some(o)
        })
        .collect();
    let width: usize = metrics.iter().map(McMetric::width).sum();

    let per_stream = map_indexed(cfg.streams, exec, |i| {
        let mut rng = cfg.stream_rng(i);
        let mut acc = vec![CompensatedSum::default(); width];
        let mut buf = vec![0.0; width];
        for _ in 0..cfg.stream_trials(i) {
            let g = sampler.draw(&mut rng);
            for (m, &o) in metrics.iter().zip(&offsets) {
                m.features(g, n_hops, &mut buf[o..o + m.width()]);
            }
            for (a, &x) in acc.iter_mut().zip(&buf) {
                a.add(x);
            }
        }
        acc
    });

    let mut total = vec![CompensatedSum::default(); width];
    for stream in &per_stream {
        for (t, s) in total.iter_mut().zip(stream) {
            t.add(s.sum);
            t.add(s.comp);
        }
    }
    let sums: Vec<f64> = total.iter().map(CompensatedSum::value).collect();
    metrics
        .iter()
        .zip(&offsets)
        .map(|(m, &o)| m.finish(&sums[o..o + m.width()], cfg.trials))
        .collect()
}

pub fn estimate_metric(chain: &HopChain, cfg: &McConfig, metric: McMetric) -> Result<Estimate> {
    Ok(estimate_metrics(chain, cfg, &[metric], Exec::default())?[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::AlphaKappaMu;

    #[test]
    fn streams_partition_trials() {
        let c = McConfig::new(10, 1, 4).unwrap();
        let parts: Vec<u64> = (0..4).map(|i| c.stream_trials(i)).collect();
        assert_eq!(parts, vec![3, 3, 2, 2]);
    }

    #[test]
    fn compensated_sum_keeps_small_terms() {
        let mut s = CompensatedSum::default();
        s.add(1.0);
        for _ in 0..1000 {
            s.add(1e-17);
        }
        s.add(-1.0);
        assert!((s.value() / 1e-14 - 1.0).abs() < 1e-12, "{}", s.value());
    }

    #[test]
    fn exec_mode_does_not_change_estimates() {
        let chain = HopChain::single(AlphaKappaMu::new(2.0, 1.0, 1.5, 2.0).unwrap());
        let cfg = McConfig::new(20_000, 9, 7).unwrap();
        let m = [
            McMetric::Outage { gamma_op: 1.0 },
            McMetric::AmountOfFading { order: 2 },
        ];
        let a = estimate_metrics(&chain, &cfg, &m, Exec::Parallel).unwrap();
        let b = estimate_metrics(&chain, &cfg, &m, Exec::Sequential).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_empty_config() {
        assert!(McConfig::new(0, 1, 1).is_err());
        assert!(McConfig::new(1, 1, 0).is_err());
    }
}
