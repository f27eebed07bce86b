//! Acceptance gate: one PASS/FAIL line per criterion, then a single assert.

use fadekit::par::Exec;
use fadekit::validation::{run_suite, Suite};
use std::path::Path;
use std::process::Command;

const CRITERIA: [(u32, Suite, &str); 10] = [
    (
        1,
        Suite::Normalization,
        "pdf + point mass = 1 (1e-8), cdf vs integrated pdf (1e-7)",
    ),
    (
        2,
        Suite::Moments,
        "closed-form moments vs quadrature (1e-6 rel), end_moment(1) = A*g (1e-12)",
    ),
    (
        3,
        Suite::MonteCarlo,
        "OP, BPSK, DBPSK, ORA within 4 standard errors at 1e6 trials",
    ),
    (
        4,
        Suite::Identities,
        "Nuttall/Marcum identity (1e-10), Marcum bounds, Meijer G identities (1e-10)",
    ),
    (5, Suite::Reductions, "Rayleigh limit of cdf, BPSK BER, ORA (1e-5)"),
    (6, Suite::Floor, "Extreme m=1.5 DBPSK at 60 dB within 2% of e^-3/2"),
    (
        7,
        Suite::Ordering,
        "C_P >= C_O >= C_T >= C_c at 20 points, both families, n=3",
    ),
    (8, Suite::Cutoff, "cutoff residual <= 1e-8, cutoff in (0, 1]"),
    (
        9,
        Suite::Tifr,
        "TIFR -> CIFR at 1e-6 (0.1%), Nuttall vs quadrature (1e-6 rel)",
    ),
    (
        10,
        Suite::Asymptotics,
        "series BER (N=10) within 5% of exact at <= -5 dB",
    ),
];

const DETERMINISM_CONFIG: &str = r#"
model = "akm"
metric = "ber"
modulation = "dbpsk"
gamma_th_db = -5.0
out = "unused"

[sweep]
start_db = 0.0
stop_db = 20.0
points = 6

[mc]
enabled = true
trials = 100001
seed = 1234
streams = 12

[asymptotic]
enabled = true
N = 10

[[hops]]
alpha = 2.0
kappa = 1.0
mu = 2.0

[[hops]]
model = "extreme"
alpha = 2.5
m = 1.2
snr_offset_db = 3.0

[[hops]]
alpha = 3.0
kappa = 0.5
mu = 1.2
"#;

fn run_cli(config: &Path, out: &Path, threads: usize) -> Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_fadekit"))
        .arg("run")
        .arg(config)
        .arg("--set")
        .arg(format!("out=\"{}\"", out.display()))
        .env("FADEKIT_THREADS", threads.to_string())
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(String::from_utf8_lossy(&status.stderr).into_owned());
    }
    std::fs::read(out.with_extension("csv")).map_err(|e| e.to_string())
}

fn determinism() -> (bool, String) {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("det.toml");
    std::fs::write(&cfg, DETERMINISM_CONFIG).unwrap();
    let runs: Result<Vec<_>, _> = [(1, "a"), (8, "b"), (1, "c"), (8, "d")]
        .iter()
        .map(|&(t, name)| run_cli(&cfg, &dir.path().join(name), t))
        .collect();
    match runs {
        Ok(r) => {
            let same = r.windows(2).all(|w| w[0] == w[1]);
            (
                same,
                format!(
                    "4 runs at 1/8/1/8 threads, {} bytes each, identical = {same}",
                    r[0].len()
                ),
            )
        }
        Err(e) => (false, format!("run failed: {e}")),
    }
}

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for (id, suite, what) in CRITERIA {
        let report = run_suite(suite, Exec::Parallel);
        let n_fail = report.failures().count();
        let ok = report.passed();
        println!(
            "[{}] criterion {id:>2} ({suite}): {what} | {} checks, {n_fail} failed",
            if ok { "PASS" } else { "FAIL" },
            report.checks.len()
        );
        for c in report.failures().take(4) {
            println!("         {}: {}", c.name, c.detail);
        }
        if !ok {
            failed.push(id);
        }
    }
    let (ok, detail) = determinism();
    println!(
        "[{}] criterion 11 (determinism): byte-identical CSV across 1 and 8 threads | {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    if !ok {
        failed.push(11);
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
