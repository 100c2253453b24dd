//! Finite-dimensional laboratory for product-formula evolutions.
//!
//! The crate builds every evolution from dense complex matrices and Hermitian
//! eigendecompositions:
//!
//! * [`linalg`]: matrices, norms, cyclic Jacobi eigensolver, exponentials of
//!   scaled Hermitian generators.
//! * [`operators`]: model Hamiltonians, projectors, kicks, spectral
//!   projections with degeneracy clustering, Zeno Hamiltonians.
//! * [`product_formulas`]: Trotter, projective Zeno, optical-potential,
//!   kicked and Floquet products, each paired with its limit object.
//! * [`continuous_coupling`]: strong continuous coupling `H + K H_c`.
//! * [`limit_equivalence`]: the pulsed/continuous interpolating protocol and
//!   the order-of-limits study.
//! * [`harness`]: experiment configs, sweeps, rate fitting and output files.

// `!(x > 0.0)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod continuous_coupling;
pub mod error;
pub mod harness;
pub mod limit_equivalence;
pub mod linalg;
pub mod operators;
pub mod product_formulas;
pub mod rng;
pub mod tolerances;

pub use error::{Error, Result};
pub use linalg::{
    eig_hermitian, expm_hermitian, frob_norm, op_norm, ComplexMatrix, Eigen, HermitianOperator, Projector,
    UnitaryOperator, C64,
};
pub use operators::{
    model_library, spectral_projections, spectral_projections_unitary, zeno_hamiltonian, zeno_hamiltonian_single, Kick,
    ModelSystem, SpectralDecomposition, SpectralEntry, SpectralKind,
};
pub use tolerances::Tolerances;

/// Library version echoed into experiment provenance.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
