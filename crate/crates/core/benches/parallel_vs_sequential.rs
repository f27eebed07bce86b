use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fadekit::channel::{AlphaKappaMu, AlphaKappaMuExtreme, FadingLaw};
use fadekit::mc::{estimate_metrics, McConfig, McMetric};
use fadekit::metrics::Modulation;
use fadekit::par::Exec;
use fadekit::sweep::{run_sweep, HopShape, HopSpec, Scenario, SweepGrid, SweepMetric, SweepOptions};
use fadekit::system::HopChain;
use std::hint::black_box;

const MODES: [(&str, Exec); 2] = [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)];

fn monte_carlo(c: &mut Criterion) {
    let hops: Vec<FadingLaw> = vec![
        AlphaKappaMu::new(2.0, 1.0, 2.0, 10.0).unwrap().into(),
        AlphaKappaMu::new(3.0, 0.5, 1.2, 10.0).unwrap().into(),
        AlphaKappaMuExtreme::new(2.5, 1.2, 10.0).unwrap().into(),
    ];
    let chain = HopChain::new(hops, 1.0).unwrap();
    let cfg = McConfig::new(200_000, 1, 32).unwrap();
    let metrics = [
        McMetric::Outage { gamma_op: 1.0 },
        McMetric::Ber(Modulation::Bpsk),
        McMetric::Ora { bandwidth: 1.0 },
    ];
    let mut g = c.benchmark_group("mc_200k_trials");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| estimate_metrics(black_box(&chain), &cfg, &metrics, exec).unwrap())
        });
    }
    g.finish();
}

fn capacity_sweep(c: &mut Criterion) {
    let hop = |alpha, kappa, mu| HopSpec {
        shape: HopShape::Akm { alpha, kappa, mu },
        offset_db: 0.0,
    };
    let scenario = Scenario {
        hops: vec![hop(2.0, 1.0, 2.0), hop(2.5, 0.5, 1.5), hop(3.0, 2.0, 1.2)],
        gamma_th_db: -10.0,
        ebn0_mode: false,
    };
    let grid = SweepGrid::new(0.0, 30.0, 20).unwrap();
    let metric = SweepMetric::Capacity {
        scheme: None,
        bandwidth: 1.0,
    };
    let mut g = c.benchmark_group("capacity_sweep_20_points");
    g.sample_size(10);
    for (name, exec) in MODES {
        let opts = SweepOptions {
            exec,
            ..SweepOptions::default()
        };
        g.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, opts| {
            b.iter(|| run_sweep(black_box(&scenario), &grid, metric, opts).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, monte_carlo, capacity_sweep);
criterion_main!(benches);
