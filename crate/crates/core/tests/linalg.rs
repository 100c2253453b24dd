use proptest::prelude::*;
use zenolab::linalg::{evolution, expm_hermitian, op_norm};
use zenolab::operators::random::{random_hermitian, random_unitary};
use zenolab::rng::SplitMix64;
use zenolab::{eig_hermitian, spectral_projections, ComplexMatrix, HermitianOperator, C64};

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Characteristic polynomial coefficients `[1, c_1, .., c_n]` of
/// `det(x I - A)` by the Faddeev-LeVerrier recursion.
fn char_poly(a: &ComplexMatrix) -> Vec<C64> {
    let n = a.dim();
    let mut coeffs = vec![c(1.0)];
    let mut m = ComplexMatrix::zeros(n);
    for k in 1..=n {
        let shifted = &m + &ComplexMatrix::identity(n).scale(coeffs[k - 1]);
        m = a * &shifted;
        coeffs.push(-m.trace() / c(k as f64));
    }
    coeffs
}

/// All roots of a monic polynomial by Durand-Kerner iteration.
fn poly_roots(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len() - 1;
    let eval = |x: C64| coeffs.iter().fold(c(0.0), |acc, &k| acc * x + k);
    let seed = C64::new(0.4, 0.9);
    let mut roots: Vec<C64> = (0..n).map(|i| seed.powu(i as u32)).collect();
    for _ in 0..2000 {
        let prev = roots.clone();
        for i in 0..n {
            let denom: C64 = (0..n).filter(|&j| j != i).map(|j| roots[i] - roots[j]).product();
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
        }
        if roots.iter().zip(&prev).all(|(a, b)| (a - b).norm() < 1e-15) {
            break;
        }
    }
    roots
}

#[test]
fn eigenvalues_match_characteristic_polynomial() {
    let mut rng = SplitMix64::new(31);
    for dim in 1..=4 {
        for _ in 0..25 {
            let h = random_hermitian(dim, &mut rng);
            let mut roots: Vec<f64> = poly_roots(&char_poly(h.matrix())).iter().map(|z| z.re).collect();
            roots.sort_by(f64::total_cmp);
            let eig = eig_hermitian(&h).unwrap();
            for (a, b) in eig.values.iter().zip(&roots) {
                assert!((a - b).abs() < 1e-8, "dim {dim}: {:?} vs {roots:?}", eig.values);
            }
        }
    }
}

#[test]
fn collided_eigenvalues_share_a_projector() {
    let mut rng = SplitMix64::new(5);
    let v = random_unitary(8, &mut rng);
    let diag = [-2.0, 0.5, 0.5, 1.0, 1.5, 3.0, 4.0, 7.0];
    let d = ComplexMatrix::from_real_diag(&diag);
    let h = HermitianOperator::new(&(v.matrix() * &d) * &v.matrix().adjoint()).unwrap();
    let decomp = spectral_projections(&h, 1e-8).unwrap();
    assert_eq!(decomp.len(), 7);
    let ranks: Vec<usize> = decomp.projectors().map(|p| p.rank()).collect();
    assert_eq!(ranks, vec![1, 2, 1, 1, 1, 1, 1]);
    assert!((decomp.values()[1] - 0.5).abs() < 1e-12);
    assert!(decomp.reconstruct().max_abs_diff(h.matrix()) < 1e-12);
}

#[test]
fn op_norm_matches_largest_singular_value_of_diagonal() {
    let d = ComplexMatrix::from_diag(&[C64::new(0.0, -3.0), c(2.0), C64::new(1.0, 1.0)]);
    assert!((op_norm(&d).unwrap() - 3.0).abs() < 1e-12);
}

fn seeded_hermitian(dim: usize, seed: u64) -> HermitianOperator {
    random_hermitian(dim, &mut SplitMix64::new(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn evolution_is_unitary(dim in 2usize..=16, seed in any::<u64>(), t in -5.0f64..5.0) {
        let u = evolution(&seeded_hermitian(dim, seed), t).unwrap();
        prop_assert!(u.unitarity_defect() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exponent_is_additive(dim in 2usize..=8, seed in any::<u64>(), a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let h = seeded_hermitian(dim, seed);
        let ea = expm_hermitian(&h, C64::new(0.0, -a)).unwrap();
        let eb = expm_hermitian(&h, C64::new(0.0, -b)).unwrap();
        let ab = expm_hermitian(&h, C64::new(0.0, -(a + b))).unwrap();
        prop_assert!((&ea * &eb).max_abs_diff(&ab) < 1e-11);
    }

    #[test]
    fn unitaries_have_unit_norm(dim in 2usize..=10, seed in any::<u64>()) {
        let u = random_unitary(dim, &mut SplitMix64::new(seed));
        prop_assert!((op_norm(u.matrix()).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn projections_reconstruct(dim in 1usize..=12, seed in any::<u64>()) {
        let h = seeded_hermitian(dim, seed);
        let d = spectral_projections(&h, 1e-8).unwrap();
        prop_assert!(d.reconstruct().max_abs_diff(h.matrix()) < 1e-10);
        prop_assert!(d.completeness_defect() < 1e-9);
        prop_assert!(d.orthogonality_defect() < 1e-9);
    }
}
