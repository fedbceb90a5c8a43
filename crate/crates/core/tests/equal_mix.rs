use lindirac::analytic::{
    equal_mix_condition_residual, equal_mix_energy, equal_mix_state, equal_mix_wavefunction,
    scalar_asymptote, vector_profile_continuum_edge, vector_profile_turning_point, x_of_r,
    LocalProfileCoefficients,
};
use lindirac::specfun::{airy_ai, airy_ai_zero, bessel_i0, AiryZeroIndex};
use proptest::prelude::*;

const M: f64 = 1.0;
const LAMBDA: f64 = 0.2;

fn zero(i: i64) -> AiryZeroIndex {
    AiryZeroIndex::new(i).unwrap()
}

fn grid(lo: f64, hi: f64, h: f64) -> Vec<f64> {
    let n = ((hi - lo) / h).round() as usize;
    (0..=n).map(|i| lo + i as f64 * h).collect()
}

#[test]
fn worked_example() {
    let e = equal_mix_energy(M, LAMBDA, AiryZeroIndex::FIRST).unwrap();
    assert!((e - 1.5828).abs() <= 5e-4);
    // The defining relation with the rounded zero quoted for it.
    let lhs = (e * e - M * M) / (LAMBDA * (M + e)).powf(2.0 / 3.0);
    assert!((lhs - 2.338).abs() < 1e-3);
}

#[test]
fn origin_sits_on_an_airy_zero() {
    for (m, lambda) in [(1.0, 0.2), (0.3, 1.5), (4.0, 0.05), (1.0, 1e-4)] {
        for i in 1..=4 {
            let state = equal_mix_state(m, lambda, zero(i)).unwrap();
            assert!(state.q2 < 0.0 && state.energy > m);
            assert!(airy_ai(state.xi(0.0)).unwrap().abs() <= 1e-8, "m = {m}, lambda = {lambda}, i = {i}");
        }
    }
}

#[test]
fn second_zero_residual() {
    let beta2 = airy_ai_zero(zero(2)).unwrap();
    assert!((beta2 + 4.087_95).abs() < 1e-5);
    let e2 = equal_mix_energy(M, LAMBDA, zero(2)).unwrap();
    let residual = (e2 * e2 - M * M) - beta2.abs() * (LAMBDA * (M + e2)).powf(2.0 / 3.0);
    assert!(residual.abs() < 1e-9);
    assert!(equal_mix_condition_residual(M, LAMBDA, e2, beta2).abs() < 1e-9);
}

#[test]
fn excited_energies_increase() {
    let energies: Vec<f64> = (1..=8).map(|i| equal_mix_energy(M, LAMBDA, zero(i)).unwrap()).collect();
    assert!(energies.windows(2).all(|w| w[1] > w[0]), "{energies:?}");
}

/// u'' = (m + E)(m - E + lambda r) u, with u'' from the Richardson
/// combination of central differences at h and 2h.
#[test]
fn second_order_equation_residual() {
    for i in 1..=3 {
        let e = equal_mix_energy(M, LAMBDA, zero(i)).unwrap();
        let h = 0.01;
        let r = grid(h, 20.0, h);
        let sol = equal_mix_wavefunction(M, LAMBDA, e, &r).unwrap();
        let u = &sol.u;
        let peak = sol.max_abs_u();
        for j in 2..r.len() - 2 {
            let d1 = (u[j - 1] - 2.0 * u[j] + u[j + 1]) / (h * h);
            let d2 = (u[j - 2] - 2.0 * u[j] + u[j + 2]) / (4.0 * h * h);
            let second = (4.0 * d1 - d2) / 3.0;
            let rhs = (M + e) * (M - e + LAMBDA * r[j]) * u[j];
            assert!((second - rhs).abs() <= 1e-5 * peak, "state {i}, r = {}: {}", r[j], second - rhs);
        }
    }
}

/// u' - u/r - (E + m) v = 0 and v' + v/r + (E - m - lambda r) u = 0.
#[allow(clippy::needless_range_loop)]
#[test]
fn first_order_system_residual() {
    let e = equal_mix_energy(M, LAMBDA, AiryZeroIndex::FIRST).unwrap();
    let h = 1e-3;
    let r = grid(0.5, 15.0, h);
    let sol = equal_mix_wavefunction(M, LAMBDA, e, &r).unwrap();
    let scale = sol.u.iter().chain(&sol.v).fold(0.0f64, |a, x| a.max(x.abs()));
    for j in 1..r.len() - 1 {
        let du = (sol.u[j + 1] - sol.u[j - 1]) / (2.0 * h);
        let dv = (sol.v[j + 1] - sol.v[j - 1]) / (2.0 * h);
        let first = du - sol.u[j] / r[j] - (e + M) * sol.v[j];
        let second = dv + sol.v[j] / r[j] + (e - M - LAMBDA * r[j]) * sol.u[j];
        assert!(first.abs() <= 1e-5 * scale && second.abs() <= 1e-5 * scale, "r = {}", r[j]);
    }
}

#[test]
fn ground_state_shape() {
    let e = equal_mix_energy(M, LAMBDA, AiryZeroIndex::FIRST).unwrap();
    let r = grid(0.0, 20.0, 0.005);
    let sol = equal_mix_wavefunction(M, LAMBDA, e, &r).unwrap();
    assert_eq!(sol.node_count, 0);
    assert_eq!(sol.v[0], 0.0);
    assert!(sol.u[0].abs() <= 1e-6 * sol.max_abs_u());
    let maxima = (1..r.len() - 1).filter(|&j| sol.u[j] > sol.u[j - 1] && sol.u[j] >= sol.u[j + 1]).count();
    assert_eq!(maxima, 1);
    // Decays monotonically once past the turning point.
    let r1 = (e - M) / LAMBDA;
    let start = r.iter().position(|&x| x > r1).unwrap();
    assert!(sol.u[start..].windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn excited_state_has_nodes_inside_turning_point() {
    let e = equal_mix_energy(M, LAMBDA, zero(3)).unwrap();
    let r = grid(0.0, 25.0, 0.005);
    let sol = equal_mix_wavefunction(M, LAMBDA, e, &r).unwrap();
    let r1 = (e - M) / LAMBDA;
    assert_eq!(sol.node_count, 2);
    assert_eq!(sol.sign_changes_between(0.0, r1), 2);
}

#[test]
fn non_eigenvalue_is_rejected() {
    let r = grid(0.0, 20.0, 0.01);
    assert!(equal_mix_wavefunction(M, LAMBDA, 1.7, &r).is_err());
}

#[test]
fn continuum_edge_profile() {
    let (e, m) = (1.5828, 1.0);
    assert_eq!(vector_profile_continuum_edge(e, m, 2.5, 0.0).unwrap(), 2.5);
    let first_zero = -(e + m) * (2.404_825_557_695_773f64 / 2.0).powi(2);
    assert!((first_zero + 3.734).abs() < 1e-3);
    assert!(vector_profile_continuum_edge(e, m, 1.0, first_zero).unwrap().abs() < 1e-12);
    let mut last = 0.0;
    for i in 0..100 {
        let y = vector_profile_continuum_edge(e, m, 1.0, 0.05 * i as f64).unwrap();
        assert!(y > last);
        last = y;
    }
}

#[test]
fn turning_point_profile() {
    let (e, m) = (1.5828, 1.0);
    let i_only = LocalProfileCoefficients::new(0.0, 1.0, 0.0).unwrap();
    let k_only = LocalProfileCoefficients::new(0.0, 0.0, 1.0).unwrap();
    let z = 2.0 * (2.0f64 / (e - m)).sqrt();
    assert!((z - 3.704_974).abs() < 1e-6);
    assert_eq!(vector_profile_turning_point(e, m, &i_only, 2.0 * m).unwrap(), bessel_i0(z).unwrap());
    let xs: Vec<f64> = (1..60).map(|i| 0.05 * i as f64).collect();
    let inc: Vec<f64> = xs.iter().map(|&x| vector_profile_turning_point(e, m, &i_only, x).unwrap()).collect();
    let dec: Vec<f64> = xs.iter().map(|&x| vector_profile_turning_point(e, m, &k_only, x).unwrap()).collect();
    assert!(inc.windows(2).all(|w| w[1] > w[0]));
    assert!(dec.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn scalar_asymptote_examples() {
    assert_eq!(scalar_asymptote(LAMBDA, 1.0, 0.0), 1.0);
    assert!((scalar_asymptote(LAMBDA, 1.0, 3.0) - 0.406_569_659_740_599).abs() < 1e-12);
    // d/dr ln u = -lambda r.
    let (r, h) = (4.0, 1e-5);
    let d = (scalar_asymptote(LAMBDA, 2.0, r + h).ln() - scalar_asymptote(LAMBDA, 2.0, r - h).ln()) / (2.0 * h);
    assert!((d + LAMBDA * r).abs() < 1e-8);
}

#[test]
fn barrier_coordinate_examples() {
    let e = 1.5828;
    assert_eq!(x_of_r(M, e, LAMBDA, 0.0), e + M);
    assert!(x_of_r(M, e, LAMBDA, (e + M) / LAMBDA).abs() < 1e-14);
    assert!((x_of_r(M, e, LAMBDA, (e - M) / LAMBDA) - 2.0 * M).abs() < 1e-14);
}

proptest! {
    #[test]
    fn xi_changes_sign_at_the_turning_point(m in 0.2f64..4.0, lambda in 0.01f64..2.0, i in 1i64..5, t in 0.0f64..3.0) {
        let state = equal_mix_state(m, lambda, zero(i)).unwrap();
        let r1 = (state.energy - m) / lambda;
        let r = t * r1;
        let xi = state.xi(r);
        if r < r1 * (1.0 - 1e-9) {
            prop_assert!(xi < 0.0);
        } else if r > r1 * (1.0 + 1e-9) {
            prop_assert!(xi > 0.0);
        }
    }

    #[test]
    fn energy_above_mass(m in 0.05f64..10.0, lambda in 1e-6f64..5.0) {
        let e = equal_mix_energy(m, lambda, AiryZeroIndex::FIRST).unwrap();
        prop_assert!(e > m);
    }
}
