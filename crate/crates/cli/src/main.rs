mod config;
mod output;

use clap::{Parser, Subcommand};
use fadekit::par::Exec;
use fadekit::sweep::run_sweep;
use fadekit::validation::{run_suite, Suite, SuiteReport};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_VALIDATION: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(name = "fadekit", version, about = "Fading-channel relay sweeps and validation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep described by a TOML file (or a previous run's .meta.json).
    Run {
        config: PathBuf,
        /// Override a config key, e.g. `--set sweep.points=1` or `--set hops.0.alpha=2.5`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        #[arg(long)]
        metric: Option<String>,
        #[arg(long = "capacity-scheme")]
        capacity_scheme: Option<String>,
        #[arg(long)]
        modulation: Option<String>,
        #[arg(long)]
        out: Option<String>,
        /// Evaluate grid points and MC streams on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Run validation suites (default: all).
    Validate {
        /// Suite names, `determinism`, or `all`.
        suites: Vec<String>,
        /// Print every check, not only failures.
        #[arg(short, long)]
        verbose: bool,
    },
    /// Print the library version and build features.
    Version,
}

fn init_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("FADEKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("FADEKIT_THREADS: expected a positive integer, got `{raw}`"))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| format!("FADEKIT_THREADS: {e}"))?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn run(path: PathBuf, mut set: Vec<String>, flags: [(&str, Option<String>); 4], sequential: bool) -> ExitCode {
    for (key, v) in flags {
        if let Some(v) = v {
            set.push(format!("{key}={}", toml_string(&v)));
        }
    }
    let cfg = match config::load(&path, &set) {
        Ok(c) => c,
        Err(e) => return fail(EXIT_CONFIG, &format!("config error: {e}")),
    };
    let exec = if sequential { Exec::Sequential } else { Exec::Parallel };
    let r = match cfg.resolve(exec) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_CONFIG, &format!("config error: {}: {e}", path.display())),
    };
    let result = match run_sweep(&r.scenario, &r.grid, r.metric, &r.options) {
        Ok(res) => res,
        Err(e) => {
            return fail(
                EXIT_NUMERICAL,
                &format!(
                    "numerical error: {e}\n  metric: {:?}\n  hops: {:?}\n  gamma_th_db: {}",
                    r.metric, r.scenario.hops, r.scenario.gamma_th_db
                ),
            )
        }
    };
    match output::write_outputs(&cfg, &result) {
        Ok((csv, meta)) => {
            eprintln!(
                "wrote {} ({} rows) and {}",
                csv.display(),
                result.rows.len(),
                meta.display()
            );
            ExitCode::SUCCESS
        }
        Err(e) => fail(EXIT_VALIDATION, &format!("cannot write output `{}`: {e}", cfg.out)),
    }
}

fn toml_string(v: &str) -> String {
    toml::Value::String(v.to_string()).to_string()
}

fn fail(code: u8, msg: &str) -> ExitCode {
    eprintln!("fadekit: {msg}");
    ExitCode::from(code)
}

enum Target {
    Core(Suite),
    Determinism,
}

fn determinism_report() -> (bool, Vec<(String, bool, String)>) {
    let text = include_str!("../../../configs/fig5_ber_dbpsk_akm.toml");
    let cfg: config::Config = toml::from_str(text).expect("bundled config parses");
    let mut cfg = cfg;
    cfg.sweep.points = 8;
    let render = |threads: usize| -> Result<Vec<u8>, String> {
        let r = cfg.resolve(Exec::Parallel).map_err(|e| e.to_string())?;
        let go = || run_sweep(&r.scenario, &r.grid, r.metric, &r.options).map_err(|e| e.to_string());
        #[cfg(feature = "parallel")]
        let res = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| e.to_string())?
            .install(go)?;
        #[cfg(not(feature = "parallel"))]
        let res = {
            let _ = threads;
            go()?
        };
        output::render_csv(&res).map_err(|e| e.to_string())
    };
    let mut checks = Vec::new();
    let one = render(1);
    for t in [2, 8] {
        let other = render(t);
        let (ok, detail) = match (&one, &other) {
            (Ok(a), Ok(b)) => (a == b, format!("{} bytes vs {} bytes", a.len(), b.len())),
            (Err(e), _) | (_, Err(e)) => (false, e.clone()),
        };
        checks.push((format!("csv identical at 1 and {t} threads"), ok, detail));
    }
    (checks.iter().all(|c| c.1), checks)
}

fn print_report(name: &str, checks: &[(String, bool, String)], verbose: bool) -> bool {
    let passed = checks.iter().all(|c| c.1);
    let failed = checks.iter().filter(|c| !c.1).count();
    println!(
        "{} {name}: {} checks, {failed} failed",
        if passed { "PASS" } else { "FAIL" },
        checks.len()
    );
    for (n, ok, d) in checks {
        if verbose || !ok {
            println!("    {} {n}: {d}", if *ok { "ok  " } else { "FAIL" });
        }
    }
    passed
}

fn validate(names: Vec<String>, verbose: bool) -> ExitCode {
    let mut targets = Vec::new();
    let all = names.is_empty() || names.iter().any(|n| n.eq_ignore_ascii_case("all"));
    if all {
        targets.extend(Suite::ALL.iter().map(|&s| Target::Core(s)));
        targets.push(Target::Determinism);
    } else {
        for n in &names {
            if n.eq_ignore_ascii_case("determinism") {
                targets.push(Target::Determinism);
            } else {
                match n.parse::<Suite>() {
                    Ok(s) => targets.push(Target::Core(s)),
                    Err(e) => return fail(EXIT_CONFIG, &format!("{e}, determinism")),
                }
            }
        }
    }
    let mut ok = true;
    for t in targets {
        ok &= match t {
            Target::Core(s) => {
                let SuiteReport { checks, .. } = run_suite(s, Exec::Parallel);
                let rows: Vec<_> = checks.into_iter().map(|c| (c.name, c.passed, c.detail)).collect();
                print_report(s.name(), &rows, verbose)
            }
            Target::Determinism => {
                let (_, rows) = determinism_report();
                print_report("determinism", &rows, verbose)
            }
        };
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VALIDATION)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        return fail(EXIT_CONFIG, &e);
    }
    match cli.command {
        Command::Run {
            config,
            set,
            metric,
            capacity_scheme,
            modulation,
            out,
            sequential,
        } => run(
            config,
            set,
            [
                ("metric", metric),
                ("capacity_scheme", capacity_scheme),
                ("modulation", modulation),
                ("out", out),
            ],
            sequential,
        ),
        Command::Validate { suites, verbose } => validate(suites, verbose),
        Command::Version => {
            let features = if cfg!(feature = "parallel") {
                "parallel"
            } else {
                "sequential"
            };
            println!("fadekit {} ({features})", env!("CARGO_PKG_VERSION"));
            ExitCode::SUCCESS
        }
    }
}
