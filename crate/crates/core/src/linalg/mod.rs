//! Dense complex linear algebra: matrices, norms, the Hermitian eigensolver
//! and exponentials of scaled Hermitian generators.

mod eigen;
mod matrix;
mod types;

pub use eigen::{eig_hermitian, eig_hermitian_with, Eigen};
pub use matrix::{frob_norm, ComplexMatrix, C64};
pub use types::{HermitianOperator, Projector, UnitaryOperator};

use crate::error::Result;
use crate::tolerances::Tolerances;

/// `exp(scale * H)` through the eigendecomposition `V diag(e^{scale l}) V^H`.
pub fn expm_hermitian(h: &HermitianOperator, scale: C64) -> Result<ComplexMatrix> {
    expm_hermitian_with(h, scale, &Tolerances::default())
}

pub fn expm_hermitian_with(h: &HermitianOperator, scale: C64, tol: &Tolerances) -> Result<ComplexMatrix> {
    if !scale.re.is_finite() || !scale.im.is_finite() {
        return Err(crate::Error::invalid("scale", "must be finite"));
    }
    let eig = eig_hermitian_with(h, tol)?;
    Ok(eig.apply_fn(|l| (scale * l).exp()))
}

/// `exp(-i t H)`
pub fn evolution(h: &HermitianOperator, t: f64) -> Result<UnitaryOperator> {
    let m = expm_hermitian(h, C64::new(0.0, -t))?;
    Ok(UnitaryOperator::from_trusted(m))
}

/// Largest singular value, `sqrt(lambda_max(M^H M))`.
pub fn op_norm(m: &ComplexMatrix) -> Result<f64> {
    m.check_finite()?;
    let gram = HermitianOperator::from_trusted(&m.adjoint() * m);
    let eig = eig_hermitian(&gram)?;
    let top = eig.values.last().copied().unwrap_or(0.0);
    Ok(top.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::random::{random_hermitian, random_matrix};
    use crate::rng::SplitMix64;
    use std::f64::consts::{LN_2, PI};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sigma_x() -> HermitianOperator {
        HermitianOperator::new(ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()).unwrap()
    }

    fn sigma_z() -> HermitianOperator {
        HermitianOperator::from_real_diag(&[1.0, -1.0])
    }

    fn reconstruction_residual(h: &HermitianOperator, eig: &Eigen) -> f64 {
        let r = eig.apply_fn(|l| c(l, 0.0));
        (&r - h.matrix()).frob_norm()
    }

    #[test]
    fn eig_diagonal_input() {
        let h = HermitianOperator::from_real_diag(&[3.0, 1.0]);
        let eig = eig_hermitian(&h).unwrap();
        assert_eq!(eig.values, vec![1.0, 3.0]);
        let v = eig.vectors.matrix();
        assert_eq!(v.column(0), vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(v.column(1), vec![c(1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn eig_sigma_x() {
        let eig = eig_hermitian(&sigma_x()).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-15);
        assert!((eig.values[1] - 1.0).abs() < 1e-15);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v0 = eig.vectors.matrix().column(0);
        let v1 = eig.vectors.matrix().column(1);
        // (1, -1)/sqrt2 and (1, 1)/sqrt2 up to a global phase
        let overlap0 = (v0[0].conj() * s - v0[1].conj() * s).norm();
        let overlap1 = (v1[0].conj() * s + v1[1].conj() * s).norm();
        assert!((overlap0 - 1.0).abs() < 1e-14);
        assert!((overlap1 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_random_8x8_reconstruction() {
        let mut rng = SplitMix64::new(8);
        let h = random_hermitian(8, &mut rng);
        let eig = eig_hermitian(&h).unwrap();
        let scale = h.matrix().frob_norm().max(1.0);
        assert!(reconstruction_residual(&h, &eig) <= 1e-10 * scale);
        assert!(eig.vectors.unitarity_defect() <= 1e-10);
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn eig_rejects_non_hermitian_with_norm() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        match HermitianOperator::new(m) {
            Err(crate::Error::NotHermitian { deviation, .. }) => {
                assert!((deviation - 2f64.sqrt()).abs() < 1e-15)
            }
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn eig_reports_sweep_count_on_failure() {
        let mut rng = SplitMix64::new(3);
        let h = random_hermitian(6, &mut rng);
        let tol = Tolerances { jacobi_max_sweeps: 1, ..Tolerances::default() };
        match eig_hermitian_with(&h, &tol) {
            Err(crate::Error::NoConvergence { sweeps, .. }) => assert_eq!(sweeps, 1),
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }

    #[test]
    fn expm_diagonal_generator() {
        let u = expm_hermitian(&sigma_z(), c(0.0, -PI / 2.0)).unwrap();
        let expected = ComplexMatrix::from_diag(&[c(0.0, -1.0), c(0.0, 1.0)]);
        assert!(u.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn expm_absorbing_projector() {
        let q = HermitianOperator::from_real_diag(&[0.0, 1.0]);
        let m = expm_hermitian(&q, c(-LN_2, 0.0)).unwrap();
        let expected = ComplexMatrix::from_real_diag(&[1.0, 0.5]);
        assert!(m.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn expm_pauli_closed_form() {
        let t: f64 = 1.0;
        let u = expm_hermitian(&sigma_x(), c(0.0, -t)).unwrap();
        let (s, co) = t.sin_cos();
        let expected = ComplexMatrix::from_rows(&[&[c(co, 0.0), c(0.0, -s)], &[c(0.0, -s), c(co, 0.0)]]).unwrap();
        assert!(u.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn expm_rejects_non_finite_scale() {
        assert!(expm_hermitian(&sigma_x(), c(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn op_norm_hand_values() {
        assert!((op_norm(&ComplexMatrix::identity(3)).unwrap() - 1.0).abs() < 1e-15);
        let d = ComplexMatrix::from_real_diag(&[2.0, -5.0]);
        assert!((op_norm(&d).unwrap() - 5.0).abs() < 1e-14);
        assert_eq!(op_norm(&ComplexMatrix::zeros(2)).unwrap(), 0.0);
    }

    fn power_iteration_norm(m: &ComplexMatrix) -> f64 {
        let gram = &m.adjoint() * m;
        let n = m.dim();
        let mut v: Vec<C64> = (0..n).map(|i| c(1.0 + i as f64 * 0.1, 0.3)).collect();
        let mut lambda = 0.0;
        for _ in 0..20_000 {
            let w = gram.matvec(&v);
            let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            lambda = norm / v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            v = w.into_iter().map(|z| z / norm).collect();
        }
        lambda.sqrt()
    }

    #[test]
    fn op_norm_matches_power_iteration() {
        let mut rng = SplitMix64::new(6);
        let m = random_matrix(6, &mut rng);
        let direct = op_norm(&m).unwrap();
        let oracle = power_iteration_norm(&m);
        assert!((direct - oracle).abs() < 1e-9, "{direct} vs {oracle}");
    }
}
