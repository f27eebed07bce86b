//! Scenario files: TOML (or a previous run's `.meta.json`), `--set`
//! overrides, and resolution into library types.

use fadekit::channel::AlphaKappaMuExtreme;
use fadekit::mc::McConfig;
use fadekit::metrics::{CapacityScheme, Modulation};
use fadekit::par::Exec;
use fadekit::sweep::{HopShape, HopSpec, Scenario, SweepGrid, SweepMetric, SweepOptions};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Akm,
    Extreme,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricTag {
    #[serde(alias = "amount_of_fading")]
    Af,
    #[serde(alias = "outage")]
    Op,
    Ber,
    Capacity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<Model>,
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[serde(default)]
    pub snr_offset_db: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub start_db: f64,
    pub stop_db: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct McSection {
    pub enabled: bool,
    pub trials: u64,
    pub seed: u64,
    pub streams: usize,
}

impl Default for McSection {
    fn default() -> Self {
        let d = McConfig::default();
        McSection {
            enabled: false,
            trials: d.trials,
            seed: d.seed,
            streams: d.streams,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AsymptoticSection {
    pub enabled: bool,
    #[serde(rename = "N")]
    pub n: usize,
}

impl Default for AsymptoticSection {
    fn default() -> Self {
        AsymptoticSection {
            enabled: false,
            n: fadekit::metrics::DEFAULT_SERIES_ORDER,
        }
    }
}

fn default_model() -> Model {
    Model::Akm
}
fn default_bandwidth() -> f64 {
    1.0
}
fn default_af_order() -> u32 {
    2
}
fn default_out() -> String {
    "fadekit_out".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default = "default_model")]
    pub model: Model,
    pub hops: Vec<HopConfig>,
    /// Relay decoding threshold in dB; absent (or -inf) means no threshold.
    #[serde(default)]
    pub gamma_th_db: Option<f64>,
    pub metric: MetricTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub capacity_scheme: Option<String>,
    #[serde(default = "default_bandwidth")]
    pub bandwidth: f64,
    #[serde(default = "default_af_order")]
    pub af_order: u32,
    #[serde(default)]
    pub ebn0_mode: bool,
    pub sweep: SweepConfig,
    #[serde(default)]
    pub mc: McSection,
    #[serde(default)]
    pub asymptotic: AsymptoticSection,
    #[serde(default = "default_out")]
    pub out: String,
}

/// Everything a run needs, in library types.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub scenario: Scenario,
    pub grid: SweepGrid,
    pub metric: SweepMetric,
    pub options: SweepOptions,
}

/// Reads a TOML scenario or a `.meta.json` from an earlier run, then
/// applies `key=value` overrides (dotted paths, array indices allowed).
pub fn load(path: &Path, overrides: &[String]) -> Result<Config, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let mut tree = if is_json {
        let mut v: Value = serde_json::from_str(&text).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        if let Some(inner) = v.get_mut("config") {
            v = inner.take();
        }
        v
    } else {
        // typed parse first so field errors carry line numbers
        if let Err(e) = toml::from_str::<Config>(&text) {
            let untyped_ok = toml::from_str::<toml::Table>(&text).is_ok();
            if overrides.is_empty() || !untyped_ok {
                return err(format!("{}: {e}", path.display()));
            }
        }
        let table: toml::Table = toml::from_str(&text).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        serde_json::to_value(table).map_err(|e| ConfigError(e.to_string()))?
    };
    for o in overrides {
        apply_override(&mut tree, o)?;
    }
    serde_path_to_error::deserialize::<_, Config>(tree).map_err(|e| {
        let after = if overrides.is_empty() {
            ""
        } else {
            " (after --set overrides)"
        };
        ConfigError(format!("{}{after}: {}: {}", path.display(), e.path(), e.inner()))
    })
}

fn parse_scalar(raw: &str) -> Value {
    match toml::from_str::<toml::Table>(&format!("v = {raw}")) {
        Ok(mut t) => serde_json::to_value(t.remove("v").expect("key present")).unwrap_or(Value::String(raw.into())),
        Err(_) => Value::String(raw.into()),
    }
}

pub fn apply_override(tree: &mut Value, item: &str) -> Result<(), ConfigError> {
    let Some((key, raw)) = item.split_once('=') else {
        return err(format!("--set {item}: expected key=value"));
    };
    let key = key.trim();
    if key.is_empty() {
        return err(format!("--set {item}: empty key"));
    }
    let mut node = tree;
    let parts: Vec<&str> = key.split('.').collect();
    for (i, part) in parts.iter().enumerate() {
        let last = i + 1 == parts.len();
        node = match node {
            Value::Object(map) => {
                if last {
                    map.insert((*part).to_string(), parse_scalar(raw.trim()));
                    return Ok(());
                }
                map.entry((*part).to_string())
                    .or_insert_with(|| Value::Object(Default::default()))
            }
            Value::Array(items) => {
                let idx: usize = part
                    .parse()
                    .map_err(|_| ConfigError(format!("--set {key}: `{part}` is not an array index")))?;
                let len = items.len();
                let slot = items
                    .get_mut(idx)
                    .ok_or_else(|| ConfigError(format!("--set {key}: index {idx} out of range (length {len})")))?;
                if last {
                    *slot = parse_scalar(raw.trim());
                    return Ok(());
                }
                slot
            }
            _ => return err(format!("--set {key}: `{part}` does not name a table")),
        };
    }
    Ok(())
}

fn positive(field: &str, v: f64) -> Result<f64, ConfigError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        err(format!("{field}: must be positive and finite, got {v}"))
    }
}

impl Config {
    pub fn resolve(&self, exec: Exec) -> Result<Resolved, ConfigError> {
        if self.hops.is_empty() {
            return err("hops: at least one hop is required");
        }
        let mut hops = Vec::with_capacity(self.hops.len());
        for (i, h) in self.hops.iter().enumerate() {
            let f = |name: &str| format!("hops[{i}].{name}");
            let alpha = positive(&f("alpha"), h.alpha)?;
            if !h.snr_offset_db.is_finite() {
                return err(format!("{}: must be finite", f("snr_offset_db")));
            }
            let shape = match h.model.unwrap_or(self.model) {
                Model::Akm => {
                    if h.m.is_some() {
                        return err(format!("{}: not a parameter of model \"akm\"", f("m")));
                    }
                    let kappa = h
                        .kappa
                        .ok_or_else(|| ConfigError(format!("{}: required for model \"akm\"", f("kappa"))))?;
                    let mu =
                        h.mu.ok_or_else(|| ConfigError(format!("{}: required for model \"akm\"", f("mu"))))?;
                    HopShape::Akm {
                        alpha,
                        kappa: positive(&f("kappa"), kappa)?,
                        mu: positive(&f("mu"), mu)?,
                    }
                }
                Model::Extreme => {
                    let m = match (h.m, h.kappa, h.mu) {
                        (Some(m), None, None) => positive(&f("m"), m)?,
                        (None, Some(k), Some(mu)) => AlphaKappaMuExtreme::m_from_kappa_mu(k, mu)
                            .map_err(|e| ConfigError(format!("{}: {e}", f("kappa/mu"))))?,
                        _ => {
                            return err(format!(
                                "hops[{i}]: model \"extreme\" takes either `m` or both `kappa` and `mu`"
                            ))
                        }
                    };
                    HopShape::Extreme { alpha, m }
                }
            };
            hops.push(HopSpec {
                shape,
                offset_db: h.snr_offset_db,
            });
        }
        let gamma_th_db = match self.gamma_th_db {
            Some(v) if v.is_nan() || v == f64::INFINITY => {
                return err(format!("gamma_th_db: must be finite or -inf, got {v}"))
            }
            Some(v) => v,
            None => f64::NEG_INFINITY,
        };
        let scenario = Scenario {
            hops,
            gamma_th_db,
            ebn0_mode: self.ebn0_mode,
        };

        let s = &self.sweep;
        if s.points == 0 {
            return err("sweep.points: must be >= 1");
        }
        if s.stop_db < s.start_db || s.stop_db.is_nan() || s.start_db.is_nan() {
            return err(format!(
                "sweep.stop_db: must be >= start_db ({} < {})",
                s.stop_db, s.start_db
            ));
        }
        let grid = SweepGrid::new(s.start_db, s.stop_db, s.points).map_err(|e| ConfigError(format!("sweep: {e}")))?;

        let metric = match self.metric {
            MetricTag::Af => {
                if self.af_order < 2 {
                    return err("af_order: must be >= 2");
                }
                SweepMetric::AmountOfFading { order: self.af_order }
            }
            MetricTag::Op => SweepMetric::Outage,
            MetricTag::Ber => {
                let raw = self
                    .modulation
                    .as_deref()
                    .ok_or_else(|| ConfigError("modulation: required when metric = \"ber\"".into()))?;
                let m: Modulation = raw.parse().map_err(|e| ConfigError(format!("modulation: {e}")))?;
                SweepMetric::Ber(m)
            }
            MetricTag::Capacity => {
                let raw = self.capacity_scheme.as_deref().unwrap_or("all");
                let scheme = if raw.eq_ignore_ascii_case("all") {
                    None
                } else {
                    Some(raw.parse::<CapacityScheme>().map_err(|_| {
                        ConfigError(format!(
                            "capacity_scheme: expected ora, opra, cifr, tifr or all, got `{raw}`"
                        ))
                    })?)
                };
                SweepMetric::Capacity {
                    scheme,
                    bandwidth: positive("bandwidth", self.bandwidth)?,
                }
            }
        };

        let mc = if self.mc.enabled {
            let ora = matches!(
                metric,
                SweepMetric::Capacity {
                    scheme: Some(CapacityScheme::Ora),
                    ..
                }
            );
            if matches!(metric, SweepMetric::Capacity { .. }) && !ora {
                return err(
                    "mc.enabled: Monte-Carlo corroboration covers af, op, ber and capacity_scheme = \"ora\" only",
                );
            }
            Some(
                McConfig::new(self.mc.trials, self.mc.seed, self.mc.streams)
                    .map_err(|e| ConfigError(format!("mc: {e}")))?,
            )
        } else {
            None
        };
        let asymptotic = if self.asymptotic.enabled {
            if !matches!(metric, SweepMetric::Ber(_)) {
                return err("asymptotic.enabled: the asymptotic column applies to metric = \"ber\" only");
            }
            if self.asymptotic.n == 0 {
                return err("asymptotic.N: must be >= 1");
            }
            Some(self.asymptotic.n)
        } else {
            None
        };
        if self.out.trim().is_empty() {
            return err("out: must name an output path prefix");
        }
        Ok(Resolved {
            scenario,
            grid,
            metric,
            options: SweepOptions { mc, asymptotic, exec },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"
metric = "op"
gamma_th_db = 3.0
out = "x"
[sweep]
start_db = 0.0
stop_db = 30.0
points = 7
[[hops]]
alpha = 2.0
kappa = 1e-9
mu = 1.0
"#;

    fn parse(text: &str) -> Config {
        toml::from_str(text).unwrap()
    }

    #[test]
    fn minimal_config_resolves() {
        let c = parse(BASE);
        let r = c.resolve(Exec::Sequential).unwrap();
        assert_eq!(r.grid.points, 7);
        assert!(r.options.mc.is_none());
        assert_eq!(c.mc.streams, McConfig::default().streams);
    }

    #[test]
    fn overrides_reach_nested_keys() {
        let mut tree = serde_json::to_value(parse(BASE)).unwrap();
        apply_override(&mut tree, "sweep.points=1").unwrap();
        apply_override(&mut tree, "hops.0.alpha=2.5").unwrap();
        apply_override(&mut tree, "modulation=bpsk").unwrap();
        apply_override(&mut tree, "mc.enabled=true").unwrap();
        let c: Config = serde_json::from_value(tree.clone()).unwrap();
        assert_eq!(c.sweep.points, 1);
        assert_eq!(c.hops[0].alpha, 2.5);
        assert_eq!(c.modulation.as_deref(), Some("bpsk"));
        assert!(c.mc.enabled);
        assert!(apply_override(&mut tree, "hops.3.alpha=1").is_err());
        assert!(apply_override(&mut tree, "noequals").is_err());
    }

    #[test]
    fn model_parameter_sets_are_enforced() {
        let mut c = parse(BASE);
        c.hops[0].m = Some(1.0);
        assert!(c.resolve(Exec::Sequential).unwrap_err().0.contains("hops[0].m"));
        c.hops[0].model = Some(Model::Extreme);
        assert!(c.resolve(Exec::Sequential).is_err());
        c.hops[0].kappa = None;
        c.hops[0].mu = None;
        assert!(c.resolve(Exec::Sequential).is_ok());
    }

    #[test]
    fn semantic_errors_name_fields() {
        let mut c = parse(BASE);
        c.sweep.points = 0;
        assert!(c.resolve(Exec::Sequential).unwrap_err().0.starts_with("sweep.points"));
        let mut c = parse(BASE);
        c.metric = MetricTag::Ber;
        assert!(c.resolve(Exec::Sequential).unwrap_err().0.starts_with("modulation"));
        let mut c = parse(BASE);
        c.metric = MetricTag::Capacity;
        c.mc.enabled = true;
        assert!(c.resolve(Exec::Sequential).unwrap_err().0.starts_with("mc.enabled"));
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(toml::from_str::<Config>(&format!("bogus = 1\n{BASE}")).is_err());
    }
}
