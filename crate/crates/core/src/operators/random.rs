//! Seeded random operators. Entry order is row-major, real part drawn before
//! imaginary part, all from one [`SplitMix64`] normal stream.

use crate::linalg::{evolution, ComplexMatrix, HermitianOperator, Projector, UnitaryOperator, C64};
use crate::rng::SplitMix64;

/// Matrix with independent standard normal real and imaginary parts.
pub fn random_matrix(dim: usize, rng: &mut SplitMix64) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| {
        let re = rng.normal();
        let im = rng.normal();
        C64::new(re, im)
    })
}

/// `(A + A^H) / 2` for a [`random_matrix`] draw `A`.
pub fn random_hermitian(dim: usize, rng: &mut SplitMix64) -> HermitianOperator {
    HermitianOperator::from_trusted(random_matrix(dim, rng))
}

/// `exp(-i H)` for a [`random_hermitian`] draw.
pub fn random_unitary(dim: usize, rng: &mut SplitMix64) -> UnitaryOperator {
    let h = random_hermitian(dim, rng);
    evolution(&h, 1.0).expect("random Hermitian draw diagonalizes")
}

/// `U diag(1, .., 1, 0, .., 0) U^H` with `rank` ones and a [`random_unitary`] `U`.
pub fn random_projector(dim: usize, rank: usize, rng: &mut SplitMix64) -> Projector {
    assert!(rank <= dim, "rank exceeds dimension");
    let u = random_unitary(dim, rng);
    let columns: Vec<Vec<C64>> = (0..rank).map(|k| u.matrix().column(k)).collect();
    Projector::from_orthonormal(dim, &columns).expect("unitary columns are orthonormal")
}
