use std::f64::consts::PI;

use zenolab::limit_equivalence::{interpolating_propagator, limit_order_experiment, InterpolatingProtocol};
use zenolab::linalg::evolution;
use zenolab::operators::{model_library, sigma_x, sigma_z};

fn grids() -> (Vec<f64>, Vec<f64>) {
    ((1..=9).map(|k| 2f64.powi(-k)).collect(), (1..=9).map(|k| 2f64.powi(k)).collect())
}

#[test]
fn large_coupling_pulse_approaches_instant_kick() {
    let p = InterpolatingProtocol { h: sigma_x(), hc: sigma_z(), tau: 0.05, tau0: PI / 4.0, k: 1e5, n_periods: 1 };
    let instant = evolution(&sigma_z(), PI / 4.0).unwrap().matrix() * evolution(&sigma_x(), 0.05).unwrap().matrix();
    let d = p.period_factor().unwrap().max_abs_diff(&instant);
    assert!(d <= 1e-4, "distance {d:e}");
}

#[test]
fn propagator_is_period_power() {
    let p = InterpolatingProtocol { h: sigma_x(), hc: sigma_z(), tau: 0.1, tau0: 0.3, k: 9.0, n_periods: 7 };
    let u = interpolating_propagator(&p).unwrap();
    let f = p.period_factor().unwrap();
    assert!(u.matrix().max_abs_diff(&f.pow_sequential(7)) < 1e-13);
    assert!((p.total_time() - 7.0 * (0.1 + 0.3 / 9.0)).abs() < 1e-14);
}

#[test]
fn qubit_diagonal_refinement_decreases_asymptotically() {
    let (tau, k) = grids();
    let r = limit_order_experiment(&sigma_x(), &sigma_z(), PI / 4.0, 1.0, &tau, &k).unwrap();
    let at = |i: usize, j: usize| r.surface[i * k.len() + j].distance;
    let diag: Vec<f64> = (4..9).map(|i| at(i, i)).collect();
    assert!(diag.windows(2).all(|w| w[1] < w[0]), "{diag:?}");
    for (t, kk) in &r.non_monotone {
        assert!(tau.contains(t) && k.contains(kk));
    }
}

#[test]
fn block_model_limits_agree() {
    let m = model_library("three-level-block", 3, 0).unwrap();
    let hc = m.auxiliary.unwrap();
    let tau: Vec<f64> = (2..=10).map(|k| 2f64.powi(-k)).collect();
    let k: Vec<f64> = (4..=12).map(|k| 2f64.powi(k)).collect();
    let r = limit_order_experiment(&m.h, &hc, PI, 1.0, &tau, &k).unwrap();
    assert!(r.discrepancy <= 2.0 * r.continuous_distance.max(r.pulsed_distance));
    assert!(r.continuous_distance < 0.05 && r.pulsed_distance < 0.05);
    assert_eq!(r.continuous_path.len(), k.len());
    assert_eq!(r.pulsed_path.len(), tau.len());
    assert!(r.pulsed_path.iter().all(|p| p.k.is_none()));
}

#[test]
fn period_rounding_tracks_total_time() {
    let (tau, k) = grids();
    let r = limit_order_experiment(&sigma_x(), &sigma_z(), PI / 4.0, 1.0, &tau, &k).unwrap();
    for p in r.surface.iter().chain(&r.pulsed_path).chain(&r.continuous_path) {
        assert!(p.n_periods >= 1);
        let period = p.t_realized / p.n_periods as f64;
        assert!((p.t_realized - 1.0).abs() <= 0.5 * period + 1e-12);
    }
}
