use zenolab::continuous_coupling::{coupled_evolution, population_deviation};
use zenolab::linalg::evolution;
use zenolab::operators::random::random_hermitian;
use zenolab::operators::{model_library, sigma_x, sigma_z};
use zenolab::rng::SplitMix64;
use zenolab::{ComplexMatrix, HermitianOperator, C64};

fn sample_times() -> Vec<f64> {
    (1..=400).map(|i| i as f64 / 400.0).collect()
}

#[test]
fn population_deviation_envelope_is_first_order() {
    let m = model_library("three-level-block", 3, 0).unwrap();
    let hc = m.auxiliary.unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let rho = ComplexMatrix::outer(&[C64::new(s, 0.0), C64::new(0.0, s), C64::new(0.0, 0.0)]);
    let times = sample_times();
    let mut prev = population_deviation(&m.h, &hc, &rho, 8.0, &times).unwrap();
    for k in [16.0, 32.0, 64.0] {
        let dev = population_deviation(&m.h, &hc, &rho, k, &times).unwrap();
        let ratio = prev / dev;
        assert!((1.6..=2.4).contains(&ratio), "K = {k}: ratio {ratio}");
        prev = dev;
    }
}

#[test]
fn coupling_shift_leaves_stripped_error_unchanged() {
    let mut rng = SplitMix64::new(21);
    let h = random_hermitian(4, &mut rng);
    let hc = HermitianOperator::from_real_diag(&[0.0, 0.0, 1.0, 3.0]);
    let shifted = hc.add_scaled(2.5, &HermitianOperator::identity(4)).unwrap();
    for k in [5.0, 50.0] {
        let a = coupled_evolution(&h, &hc, k, 1.0).unwrap();
        let b = coupled_evolution(&h, &shifted, k, 1.0).unwrap();
        assert!((a.phase_stripped_error - b.phase_stripped_error).abs() < 1e-10);
        assert!(a.zeno_hamiltonian.matrix().max_abs_diff(b.zeno_hamiltonian.matrix()) < 1e-12);
    }
}

#[test]
fn limit_object_factors_commute() {
    let mut rng = SplitMix64::new(8);
    let h = random_hermitian(5, &mut rng);
    let hc = HermitianOperator::from_real_diag(&[1.0, 1.0, -1.0, 2.0, 2.0]);
    let (k, t) = (30.0, 0.9);
    let r = coupled_evolution(&h, &hc, k, t).unwrap();
    let z = evolution(&r.zeno_hamiltonian, t).unwrap();
    let c = evolution(&hc, k * t).unwrap();
    let other = c.matrix() * z.matrix();
    assert!(r.limit_object.max_abs_diff(&other) < 1e-12);
}

#[test]
fn stripped_error_decays_with_coupling() {
    let (h, hc) = (sigma_x(), sigma_z());
    let errs: Vec<f64> =
        [8.0, 64.0, 512.0].iter().map(|&k| coupled_evolution(&h, &hc, k, 1.0).unwrap().phase_stripped_error).collect();
    assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    assert!(errs[2] < 5e-3);
}
