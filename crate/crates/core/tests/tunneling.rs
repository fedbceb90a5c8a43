use std::f64::consts::PI;

use lindirac::model::PotentialMix;
use lindirac::tunneling::{
    continuum_barrier_integral, gamma_mixed, gamma_pure_vector, lifetime_ratio,
    pure_vector_barrier_integral, sauter_transmission,
};
use lindirac::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Antiderivative of sqrt(w^2 - m^2) in w = lambda r - E, from w = m to W.
fn continuum_closed_form(m: f64, lambda: f64, energy: f64, r3: f64) -> f64 {
    let w = lambda * r3 - energy;
    let root = (w * w - m * m).sqrt();
    (0.5 * w * root - 0.5 * m * m * ((w + root) / m).ln()) / lambda
}

#[test]
fn half_disc_quadrature_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let m = rng.gen_range(0.1..5.0);
        let lambda = rng.gen_range(0.01..2.0);
        let e = m * rng.gen_range(1.001..10.0);
        let q = pure_vector_barrier_integral(m, lambda, e).unwrap();
        let exact = PI * m * m / (2.0 * lambda);
        assert!((q / exact - 1.0).abs() <= 1e-9, "m = {m}, lambda = {lambda}, E = {e}");
        assert_eq!(gamma_pure_vector(m, lambda).unwrap(), exact);
    }
}

#[test]
fn worked_example_lifetime() {
    let g = gamma_pure_vector(1.0, 0.2).unwrap();
    assert!((g - 7.853_982).abs() < 1e-6);
    let tau = lifetime_ratio(g).unwrap();
    assert!((tau.ratio / 6.635_629e6 - 1.0).abs() < 1e-6);
    assert!(!tau.saturated);
}

#[test]
fn continuum_part_matches_closed_form() {
    let (m, lambda) = (1.0, 0.2);
    for s in [0.05, 0.1, 0.2, 0.3, 0.4, 0.45] {
        for e in [1.2, 1.5828, 2.5] {
            let mix = PotentialMix::new(lambda, s).unwrap();
            let report = gamma_mixed(m, &mix, e).unwrap();
            let r3 = (e + m) / ((1.0 - 2.0 * s) * lambda);
            assert!((report.r3 - r3).abs() <= 1e-12 * r3);
            let exact = continuum_closed_form(m, lambda, e, r3);
            assert!(
                (report.continuum_part - exact).abs() <= 1e-9 * exact.max(1.0),
                "s = {s}, E = {e}: {} vs {exact}",
                report.continuum_part
            );
            assert_eq!(report.gamma, report.vector_part + report.continuum_part);
        }
    }
}

#[test]
fn pure_vector_has_no_continuum_part() {
    let mix = PotentialMix::new(0.2, 0.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let e = rng.gen_range(1.01..6.0);
        let report = gamma_mixed(1.0, &mix, e).unwrap();
        assert_eq!(report.continuum_part, 0.0);
        assert!((report.gamma - PI / 0.4).abs() < 1e-12);
    }
}

#[test]
fn strictly_bound_mix_is_rejected() {
    for s in [0.5, 0.7, 1.0] {
        let mix = PotentialMix::new(0.2, s).unwrap();
        assert!(matches!(gamma_mixed(1.0, &mix, 1.6), Err(Error::Precondition(_))));
    }
}

#[test]
fn huge_gamma_saturates() {
    let tau = lifetime_ratio(500.0).unwrap();
    assert!(tau.saturated && tau.ratio.is_infinite());
    assert_eq!(tau.log_ratio, 1000.0);
    assert!(lifetime_ratio(-1.0).is_err());
}

#[test]
fn continuum_integral_vanishes_without_extent() {
    assert_eq!(continuum_barrier_integral(1.0, 0.2, 1.6, 13.0, 13.0).unwrap(), 0.0);
    assert_eq!(continuum_barrier_integral(1.0, 0.2, 1.6, 13.0, 12.0).unwrap(), 0.0);
}

proptest! {
    #[test]
    fn scalar_admixture_lengthens_lifetime(s in 0.01f64..0.49, e in 1.01f64..4.0, lambda in 0.05f64..1.0) {
        let mix = PotentialMix::new(lambda, s).unwrap();
        let report = gamma_mixed(1.0, &mix, e).unwrap();
        prop_assert!(report.gamma > PI / (2.0 * lambda));
        prop_assert!((report.vector_part - PI / (2.0 * lambda)).abs() < 1e-12 * report.vector_part);
    }

    #[test]
    fn gamma_grows_with_scalar_fraction(a in 0.0f64..0.49, b in 0.0f64..0.49, e in 1.01f64..4.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let g = |s: f64| gamma_mixed(1.0, &PotentialMix::new(0.2, s).unwrap(), e).unwrap().gamma;
        prop_assert!(g(lo) <= g(hi));
    }

    #[test]
    fn sauter_matches_lifetime_exponent(m in 0.1f64..3.0, lambda in 0.05f64..2.0) {
        // exp(-pi m^2 / lambda) is the inverse of exp(2 gamma) for pure vector.
        let t = sauter_transmission(m, lambda).unwrap();
        let tau = lifetime_ratio(gamma_pure_vector(m, lambda).unwrap()).unwrap();
        prop_assert!((t.ln() + tau.log_ratio).abs() <= 1e-12 * tau.log_ratio.max(1.0));
    }
}
