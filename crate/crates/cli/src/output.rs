//! CSV and metadata writers.

use crate::config::Config;
use fadekit::sweep::SweepResult;
use serde::Serialize;
use std::io;
use std::path::{Path, PathBuf};

/// Shortest text that parses back to the same `f64`. Plain notation in
/// `[1e-4, 1e15)`, scientific outside it.
pub fn format_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn render_csv(result: &SweepResult) -> io::Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(result.header())?;
    for rec in result.records() {
        w.write_record(rec.iter().map(|&v| format_f64(v)))?;
    }
    w.into_inner().map_err(|e| e.into_error())
}

#[derive(Debug, Serialize)]
pub struct Meta<'a> {
    pub fadekit_version: &'static str,
    pub seed: u64,
    pub config: &'a Config,
}

pub fn paths(out: &str) -> (PathBuf, PathBuf) {
    (
        PathBuf::from(format!("{out}.csv")),
        PathBuf::from(format!("{out}.meta.json")),
    )
}

fn ensure_parent(p: &Path) -> io::Result<()> {
    match p.parent() {
        Some(d) if !d.as_os_str().is_empty() => std::fs::create_dir_all(d),
        _ => Ok(()),
    }
}

pub fn write_outputs(config: &Config, result: &SweepResult) -> io::Result<(PathBuf, PathBuf)> {
    let (csv_path, meta_path) = paths(&config.out);
    ensure_parent(&csv_path)?;
    std::fs::write(&csv_path, render_csv(result)?)?;
    let meta = Meta {
        fadekit_version: env!("CARGO_PKG_VERSION"),
        seed: config.mc.seed,
        config,
    };
    let mut text = serde_json::to_string_pretty(&meta).map_err(io::Error::other)?;
    text.push('\n');
    std::fs::write(&meta_path, text)?;
    Ok((csv_path, meta_path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [
            0.0,
            1.0,
            -2.5,
            0.1,
            1e-300,
            3.0e-7,
            12345.678,
            1e20,
            f64::MIN_POSITIVE,
            0.8603472826,
        ] {
            let s = format_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(format_f64(0.25), "0.25");
        assert_eq!(format_f64(1.5e-7), "1.5e-7");
    }
}
