//! SNR sweeps of one metric over a scenario, with optional Monte-Carlo and
//! asymptotic columns.
//!
//! Inputs are in dB and converted here; everything below this module works
//! on linear scales.

use crate::channel::{AlphaKappaMu, AlphaKappaMuExtreme, FadingLaw};
use crate::error::{Error, Result};
use crate::mc::{estimate_metrics, Estimate, McConfig, McMetric};
use crate::metrics::{
    amount_of_fading, ber, ber_asymptotic, capacity, capacity_all, outage_probability, CapacityScheme, Modulation,
};
use crate::par::{map_indexed, Exec};
use crate::system::HopChain;

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HopShape {
    Akm { alpha: f64, kappa: f64, mu: f64 },
    Extreme { alpha: f64, m: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopSpec {
    pub shape: HopShape,
    /// Offset of this hop's mean SNR from the sweep value, in dB.
    pub offset_db: f64,
}

/// Chain shape without a mean SNR.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub hops: Vec<HopSpec>,
    pub gamma_th_db: f64,
    /// Treat the sweep value as E[γ] (Eb/N0) rather than the scale γ̄.
    pub ebn0_mode: bool,
}

impl Scenario {
    pub fn chain_at(&self, snr_db: f64) -> Result<HopChain> {
        let hops = self
            .hops
            .iter()
            .map(|h| {
                let g = db_to_linear(snr_db + h.offset_db);
                let law: FadingLaw = match (h.shape, self.ebn0_mode) {
                    (HopShape::Akm { alpha, kappa, mu }, false) => AlphaKappaMu::new(alpha, kappa, mu, g)?.into(),
                    (HopShape::Akm { alpha, kappa, mu }, true) => AlphaKappaMu::from_ebn0(alpha, kappa, mu, g)?.into(),
                    (HopShape::Extreme { alpha, m }, false) => AlphaKappaMuExtreme::new(alpha, m, g)?.into(),
                    (HopShape::Extreme { alpha, m }, true) => AlphaKappaMuExtreme::from_ebn0(alpha, m, g)?.into(),
                };
                Ok(law)
            })
            .collect::<Result<Vec<_>>>()?;
        HopChain::new(hops, db_to_linear(self.gamma_th_db))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid {
    pub start_db: f64,
    pub stop_db: f64,
    pub points: usize,
}

impl SweepGrid {
    pub fn new(start_db: f64, stop_db: f64, points: usize) -> Result<Self> {
        if points == 0 {
            return Err(Error::InvalidParameter("sweep needs at least one point".into()));
        }
        if !(stop_db >= start_db) || !start_db.is_finite() || !stop_db.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "sweep range [{start_db}, {stop_db}] must be finite with stop >= start"
            )));
        }
        Ok(SweepGrid {
            start_db,
            stop_db,
            points,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start_db];
        }
        let step = (self.stop_db - self.start_db) / (self.points - 1) as f64;
        (0..self.points).map(|i| self.start_db + step * i as f64).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepMetric {
    AmountOfFading {
        order: u32,
    },
    /// Outage at the scenario threshold γ_th.
    Outage,
    Ber(Modulation),
    /// `scheme: None` computes all four schemes.
    Capacity {
        scheme: Option<CapacityScheme>,
        bandwidth: f64,
    },
}

impl SweepMetric {
    pub fn value_columns(&self) -> Vec<String> {
        match self {
            SweepMetric::Capacity { scheme: None, .. } => {
                CapacityScheme::ALL.iter().map(|s| format!("value_{s}")).collect()
            }
            _ => vec!["value".into()],
        }
    }

    fn mc_metric(&self, chain: &HopChain) -> Result<McMetric> {
        match *self {
            SweepMetric::AmountOfFading { order } => Ok(McMetric::AmountOfFading { order }),
            SweepMetric::Outage => Ok(McMetric::Outage {
                gamma_op: chain.gamma_th(),
            }),
            SweepMetric::Ber(m) => Ok(McMetric::Ber(m)),
            SweepMetric::Capacity {
                scheme: Some(CapacityScheme::Ora),
                bandwidth,
            } => Ok(McMetric::Ora { bandwidth }),
            SweepMetric::Capacity { .. } => Err(Error::InvalidParameter(
                "Monte-Carlo corroboration covers the ORA capacity only".into(),
            )),
        }
    }

    fn values(&self, chain: &HopChain) -> Result<Vec<f64>> {
        match *self {
            SweepMetric::AmountOfFading { order } => Ok(vec![amount_of_fading(chain, order)?]),
            SweepMetric::Outage => Ok(vec![outage_probability(chain, chain.gamma_th())?]),
            SweepMetric::Ber(m) => Ok(vec![ber(chain, m)?]),
            SweepMetric::Capacity {
                scheme: Some(s),
                bandwidth,
            } => Ok(vec![capacity(chain, bandwidth, s)?.value]),
            SweepMetric::Capacity {
                scheme: None,
                bandwidth,
            } => Ok(capacity_all(chain, bandwidth)?.iter().map(|r| r.value).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepOptions {
    pub mc: Option<McConfig>,
    /// Series order of the asymptotic BER column.
    pub asymptotic: Option<usize>,
    pub exec: Exec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub snr_db: f64,
    pub values: Vec<f64>,
    pub mc: Option<Estimate>,
    pub asymptotic: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub value_columns: Vec<String>,
    pub has_mc: bool,
    pub has_asymptotic: bool,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn header(&self) -> Vec<String> {
        let mut h = vec!["snr_db".to_string()];
        h.extend(self.value_columns.iter().cloned());
        if self.has_mc {
            h.extend(["mc_value".to_string(), "mc_stderr".to_string()]);
        }
        if self.has_asymptotic {
            h.push("asymptotic_value".into());
        }
        h
    }

    /// Each row as numbers in header order.
    pub fn records(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|r| {
                let mut v = vec![r.snr_db];
                v.extend(&r.values);
                if let Some(e) = r.mc {
                    v.extend([e.mean, e.std_error]);
                }
                if let Some(a) = r.asymptotic {
                    v.push(a);
                }
                v
            })
            .collect()
    }
}

/// Evaluates `metric` at every grid point. Points run in parallel under
/// `Exec::Parallel`; rows come back in grid order.
pub fn run_sweep(
    scenario: &Scenario,
    grid: &SweepGrid,
    metric: SweepMetric,
    opts: &SweepOptions,
) -> Result<SweepResult> {
    let asymptotic = match (opts.asymptotic, metric) {
        (Some(n), SweepMetric::Ber(m)) => Some((n, m)),
        (Some(_), _) => {
            return Err(Error::InvalidParameter(
                "the asymptotic column applies to BER sweeps only".into(),
            ));
        }
        (None, _) => None,
    };
    if opts.mc.is_some() {
        metric.mc_metric(&scenario.chain_at(grid.start_db)?)?;
    }
    let snrs = grid.values();
    let rows = map_indexed(snrs.len(), opts.exec, |i| {
        let snr_db = snrs[i];
        let at = |e: Error| Error::AtSnr {
            snr_db,
            source: Box::new(e),
        };
        let chain = scenario.chain_at(snr_db).map_err(at)?;
        let values = metric.values(&chain).map_err(at)?;
        let mc = match opts.mc {
            Some(cfg) => {
                let m = metric.mc_metric(&chain).map_err(at)?;
                Some(estimate_metrics(&chain, &cfg, &[m], opts.exec).map_err(at)?[0])
            }
            None => None,
        };
        let asymptotic = match asymptotic {
            Some((n, m)) => Some(ber_asymptotic(&chain, m, n).map_err(at)?),
            None => None,
        };
        Ok(SweepRow {
            snr_db,
            values,
            mc,
            asymptotic,
        })
    });
    Ok(SweepResult {
        value_columns: metric.value_columns(),
        has_mc: opts.mc.is_some(),
        has_asymptotic: asymptotic.is_some(),
        rows: rows.into_iter().collect::<Result<Vec<_>>>()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rayleigh_scenario(th_db: f64) -> Scenario {
        Scenario {
            hops: vec![HopSpec {
                shape: HopShape::Akm {
                    alpha: 2.0,
                    kappa: 1e-9,
                    mu: 1.0,
                },
                offset_db: 0.0,
            }],
            gamma_th_db: th_db,
            ebn0_mode: false,
        }
    }

    #[test]
    fn grid_values() {
        assert_eq!(SweepGrid::new(0.0, 30.0, 7).unwrap().values()[6], 30.0);
        assert_eq!(SweepGrid::new(5.0, 5.0, 1).unwrap().values(), vec![5.0]);
        assert!(SweepGrid::new(1.0, 0.0, 3).is_err());
        assert!(SweepGrid::new(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn rayleigh_outage_sweep() {
        let grid = SweepGrid::new(0.0, 30.0, 7).unwrap();
        let r = run_sweep(
            &rayleigh_scenario(3.0),
            &grid,
            SweepMetric::Outage,
            &SweepOptions::default(),
        )
        .unwrap();
        assert_eq!(r.header(), vec!["snr_db", "value"]);
        for row in &r.rows {
            let want = 1.0 - (-db_to_linear(3.0) / db_to_linear(row.snr_db)).exp();
            assert!((row.values[0] - want).abs() < 1e-8);
        }
    }

    #[test]
    fn capacity_all_header() {
        let grid = SweepGrid::new(10.0, 10.0, 1).unwrap();
        let m = SweepMetric::Capacity {
            scheme: None,
            bandwidth: 1.0,
        };
        let r = run_sweep(&rayleigh_scenario(0.0), &grid, m, &SweepOptions::default()).unwrap();
        assert_eq!(
            r.header(),
            vec!["snr_db", "value_opra", "value_ora", "value_tifr", "value_cifr"]
        );
    }

    #[test]
    fn unsupported_columns_rejected() {
        let grid = SweepGrid::new(0.0, 1.0, 2).unwrap();
        let opts = SweepOptions {
            asymptotic: Some(10),
            ..SweepOptions::default()
        };
        assert!(run_sweep(&rayleigh_scenario(0.0), &grid, SweepMetric::Outage, &opts).is_err());
        let opts = SweepOptions {
            mc: Some(McConfig::default()),
            ..SweepOptions::default()
        };
        let m = SweepMetric::Capacity {
            scheme: Some(CapacityScheme::Cifr),
            bandwidth: 1.0,
        };
        assert!(run_sweep(&rayleigh_scenario(0.0), &grid, m, &opts).is_err());
    }

    #[test]
    fn ebn0_mode_sets_mean() {
        let s = Scenario {
            hops: vec![HopSpec {
                shape: HopShape::Akm {
                    alpha: 3.0,
                    kappa: 2.0,
                    mu: 0.7,
                },
                offset_db: -3.0,
            }],
            gamma_th_db: 0.0,
            ebn0_mode: true,
        };
        let c = s.chain_at(13.0).unwrap();
        assert!((c.end_moment(1.0).unwrap() / 10.0 - 1.0).abs() < 1e-3);
    }
}
