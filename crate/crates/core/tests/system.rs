use fadekit::channel::{AlphaKappaMu, AlphaKappaMuExtreme, FadingLaw};
use fadekit::metrics::metric_spec;
use fadekit::system::HopChain;
use proptest::prelude::*;

fn akm(a: f64, k: f64, m: f64, g: f64) -> FadingLaw {
    AlphaKappaMu::new(a, k, m, g).unwrap().into()
}

fn ext(a: f64, m: f64, g: f64) -> FadingLaw {
    AlphaKappaMuExtreme::new(a, m, g).unwrap().into()
}

#[test]
fn prefix_outage_is_product_of_survivals() {
    let hops = vec![akm(2.0, 1.0, 2.0, 3.0), ext(2.5, 1.2, 2.0), akm(3.0, 0.5, 1.2, 4.0)];
    let th = 0.7;
    let c = HopChain::new(hops.clone(), th).unwrap();
    let want = hops[0].survival(th) * hops[1].survival(th);
    assert!((c.prefix_survival() - want).abs() < 1e-15);
    assert!((c.prefix_outage() + c.prefix_survival() - 1.0).abs() < 1e-15);
}

#[test]
fn end_density_mass_balance() {
    let c = HopChain::new(vec![akm(2.0, 1.0, 2.0, 1.0), ext(2.0, 1.5, 2.0)], 0.5).unwrap();
    let cont = c
        .last()
        .expect_continuous(|_| 1.0, 0.0, &[], &metric_spec())
        .unwrap()
        .value;
    let total = c.end_point_mass() + c.prefix_survival() * cont;
    assert!((total - 1.0).abs() < 1e-9);
}

#[test]
fn end_cdf_limits() {
    let c = HopChain::new(vec![akm(2.0, 1.0, 2.0, 1.0), akm(2.2, 2.0, 0.8, 1.0)], 1.0).unwrap();
    assert!((c.end_cdf(0.0) - c.end_point_mass()).abs() < 1e-15);
    assert_eq!(c.end_cdf(f64::INFINITY), 1.0);
}

#[test]
fn end_moment_scales_last_hop() {
    let c = HopChain::new(vec![akm(2.0, 1.0, 2.0, 1.0), akm(2.0, 0.5, 1.5, 4.0)], 0.3).unwrap();
    let want = c.prefix_survival() * c.last().moment(2.0).unwrap();
    assert!((c.end_moment(2.0).unwrap() / want - 1.0).abs() < 1e-14);
}

#[test]
fn scaled_chain_moves_every_hop() {
    let c = HopChain::new(vec![akm(2.0, 1.0, 2.0, 1.0), ext(3.0, 2.0, 2.0)], 0.3).unwrap();
    let s = c.scaled(10.0).unwrap();
    assert_eq!(s.hops()[0].mean_snr(), 10.0);
    assert_eq!(s.hops()[1].mean_snr(), 20.0);
    assert!(s.prefix_outage() < c.prefix_outage());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn end_cdf_is_a_distribution(a1 in 0.8f64..4.0, k1 in 0.05f64..5.0, m1 in 0.3f64..3.0,
                                 a2 in 0.8f64..4.0, m2 in 0.2f64..3.0, g in 0.05f64..50.0,
                                 th in 0.0f64..5.0, x in 0.0f64..60.0, dx in 0.0f64..10.0) {
        let c = HopChain::new(vec![akm(a1, k1, m1, g), ext(a2, m2, g)], th).unwrap();
        let (lo, hi) = (c.end_cdf(x), c.end_cdf(x + dx));
        prop_assert!(lo >= c.end_point_mass() - 1e-14);
        prop_assert!(lo <= hi + 1e-14 && hi <= 1.0);
        prop_assert!((c.end_cdf(x) + c.end_survival(x) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn mgf_is_bounded_by_mass_and_one(a in 0.8f64..4.0, k in 0.05f64..5.0, m in 0.3f64..3.0,
                                      g in 0.05f64..50.0, th in 0.0f64..3.0, s in 0.01f64..20.0) {
        let c = HopChain::new(vec![akm(a, k, m, g), akm(a, k, m, g)], th).unwrap();
        let v = c.end_mgf(s).unwrap();
        prop_assert!(v >= c.end_point_mass() - 1e-12 && v <= 1.0 + 1e-12);
    }
}
