use fadekit::channel::{AlphaKappaMu, AlphaKappaMuExtreme, FadingLaw};
use fadekit::mc::*;
use fadekit::metrics::*;
use fadekit::par::Exec;
use fadekit::system::HopChain;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

const N: usize = 1_000_000;

fn draws<F: FnMut(&mut Xoshiro256PlusPlus) -> f64>(seed: u64, mut f: F) -> Vec<f64> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    (0..N).map(|_| f(&mut rng)).collect()
}

fn mean_and_se(x: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    let v = x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (v / n).sqrt())
}

/// Empirical cdf at each point vs analytic, within 4 binomial standard errors.
fn cdf_agrees(sample: &mut [f64], law: &FadingLaw, points: &[f64]) {
    sample.sort_by(f64::total_cmp);
    let n = sample.len() as f64;
    for &g in points {
        let k = sample.partition_point(|&v| v <= g) as f64;
        let p = law.cdf(g);
        let se = (p * (1.0 - p) / n).sqrt().max(1.0 / n);
        assert!((k / n - p).abs() <= 4.0 * se, "cdf({g}): empirical {} vs {p}", k / n);
    }
}

#[test]
fn akm_sampler_mean_and_quantiles() {
    let l = AlphaKappaMu::new(2.6, 1.4, 0.8, 2.0).unwrap();
    let mut x = draws(1, |r| sample_akm(&l, r));
    let (m, se) = mean_and_se(&x);
    assert!((m - l.moment(1.0).unwrap()).abs() <= 4.0 * se);
    let law: FadingLaw = l.into();
    let pts: Vec<f64> = (1..=20).map(|i| 0.15 * i as f64).collect();
    cdf_agrees(&mut x, &law, &pts);
}

#[test]
fn rayleigh_kolmogorov_smirnov() {
    let l = AlphaKappaMu::new(2.0, 1e-9, 1.0, 3.0).unwrap();
    let mut x = draws(2, |r| sample_akm(&l, r));
    x.sort_by(f64::total_cmp);
    let n = x.len() as f64;
    let d = x
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let f = 1.0 - (-v / 3.0).exp();
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max);
    assert!(d < 1.63 / n.sqrt(), "KS statistic {d}");
}

#[test]
fn extreme_sampler_mass_mean_quantiles() {
    let l = AlphaKappaMuExtreme::new(2.4, 0.9, 1.5).unwrap();
    let mut x = draws(3, |r| sample_extreme(&l, r));
    let n = x.len() as f64;
    let zeros = x.iter().filter(|&&v| v == 0.0).count() as f64 / n;
    let p0 = l.zero_mass();
    assert!((zeros - p0).abs() <= 4.0 * (p0 * (1.0 - p0) / n).sqrt());
    let (m, se) = mean_and_se(&x);
    assert!((m - l.moment(1.0).unwrap()).abs() <= 4.0 * se);
    let law: FadingLaw = l.into();
    let pts: Vec<f64> = (1..=20).map(|i| 0.2 * i as f64).collect();
    cdf_agrees(&mut x, &law, &pts);
}

#[test]
fn chain_zero_mass_and_mean() {
    let hops: Vec<FadingLaw> = vec![
        AlphaKappaMu::new(2.0, 1.0, 2.0, 2.0).unwrap().into(),
        AlphaKappaMu::new(3.0, 0.5, 1.2, 2.0).unwrap().into(),
        AlphaKappaMuExtreme::new(2.5, 1.2, 2.0).unwrap().into(),
    ];
    let chain = HopChain::new(hops, 0.8).unwrap();
    let cfg = McConfig::new(N as u64, 4, 8).unwrap();
    let x = simulate_chain(&chain, &cfg, Exec::default()).unwrap();
    assert_eq!(x.len(), N);
    let n = x.len() as f64;
    let zeros = x.iter().filter(|&&v| v == 0.0).count() as f64 / n;
    let p0 = chain.end_point_mass();
    assert!((zeros - p0).abs() <= 4.0 * (p0 * (1.0 - p0) / n).sqrt());
    let (m, se) = mean_and_se(&x);
    assert!((m - chain.end_moment(1.0).unwrap()).abs() <= 4.0 * se);
}

#[test]
fn single_hop_chain_is_the_hop_sampler() {
    let l = AlphaKappaMu::new(2.2, 0.7, 1.3, 1.0).unwrap();
    let cfg = McConfig::new(1000, 11, 1).unwrap();
    let a = simulate_chain(&HopChain::single(l), &cfg, Exec::Sequential).unwrap();
    let mut rng = cfg.stream_rng(0);
    let b: Vec<f64> = (0..1000).map(|_| sample_akm(&l, &mut rng)).collect();
    assert_eq!(a, b);
}

#[test]
fn estimates_agree_with_analytic_metrics() {
    let hops: Vec<FadingLaw> = vec![
        AlphaKappaMu::new(2.0, 1.0, 2.0, 10.0).unwrap().into(),
        AlphaKappaMu::new(2.0, 1.0, 2.0, 10.0).unwrap().into(),
    ];
    let chain = HopChain::new(hops, 1.0).unwrap();
    let cfg = McConfig::new(N as u64, 5, 16).unwrap();
    let metrics = [
        McMetric::Outage { gamma_op: 2.0 },
        McMetric::Ber(Modulation::Bpsk),
        McMetric::Ber(Modulation::Dbpsk),
        McMetric::Ora { bandwidth: 1.0 },
        McMetric::AmountOfFading { order: 2 },
    ];
    let est = estimate_metrics(&chain, &cfg, &metrics, Exec::default()).unwrap();
    let analytic = [
        outage_probability(&chain, 2.0).unwrap(),
        ber(&chain, Modulation::Bpsk).unwrap(),
        ber(&chain, Modulation::Dbpsk).unwrap(),
        capacity_ora(&chain, 1.0).unwrap().value,
        amount_of_fading(&chain, 2).unwrap(),
    ];
    for ((m, e), a) in metrics.iter().zip(&est).zip(analytic) {
        assert!(e.agrees(a, 4.0), "{m:?}: mc {} +- {} vs {a}", e.mean, e.std_error);
        assert_eq!(e.trials, N as u64);
    }
}

#[test]
fn reproducible_and_thread_independent() {
    let chain = HopChain::single(AlphaKappaMuExtreme::new(2.0, 1.1, 3.0).unwrap());
    let cfg = McConfig::new(200_001, 77, 6).unwrap();
    let m = [McMetric::Ber(Modulation::Dbpsk), McMetric::Ora { bandwidth: 1.0 }];
    let a = estimate_metrics(&chain, &cfg, &m, Exec::Parallel).unwrap();
    let b = estimate_metrics(&chain, &cfg, &m, Exec::Parallel).unwrap();
    let c = estimate_metrics(&chain, &cfg, &m, Exec::Sequential).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, c);
    let other = McConfig { seed: 78, ..cfg };
    assert_ne!(a, estimate_metrics(&chain, &other, &m, Exec::Parallel).unwrap());
}

#[test]
fn stream_count_changes_only_noise() {
    let chain = HopChain::single(AlphaKappaMu::new(2.0, 1.0, 1.5, 4.0).unwrap());
    let metric = McMetric::Outage { gamma_op: 1.0 };
    let a = estimate_metrics(
        &chain,
        &McConfig::new(400_000, 3, 1).unwrap(),
        &[metric],
        Exec::default(),
    )
    .unwrap()[0];
    let b = estimate_metrics(
        &chain,
        &McConfig::new(400_000, 3, 13).unwrap(),
        &[metric],
        Exec::default(),
    )
    .unwrap()[0];
    let se = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
    assert!((a.mean - b.mean).abs() <= 4.0 * se);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn draws_are_finite_and_nonnegative(alpha in 0.5f64..6.0, kappa in 1e-6f64..20.0, mu in 0.1f64..5.0,
                                        m in 0.05f64..5.0, g in 1e-3f64..1e4, seed in any::<u64>()) {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
        let l = AlphaKappaMu::new(alpha, kappa, mu, g).unwrap();
        let e = AlphaKappaMuExtreme::new(alpha, m, g).unwrap();
        for _ in 0..64 {
            let a = sample_akm(&l, &mut rng);
            let b = sample_extreme(&e, &mut rng);
            prop_assert!(a.is_finite() && a >= 0.0);
            prop_assert!(b.is_finite() && b >= 0.0);
        }
    }

    #[test]
    fn trials_are_partitioned_exactly(trials in 1u64..100_000, streams in 1usize..64) {
        let cfg = McConfig::new(trials, 0, streams).unwrap();
        let total: u64 = (0..streams).map(|i| cfg.stream_trials(i)).sum();
        prop_assert_eq!(total, trials);
    }
}
