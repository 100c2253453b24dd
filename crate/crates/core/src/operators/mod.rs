//! The operator cast: model Hamiltonians, projectors, kicks, spectral
//! projections and Zeno Hamiltonians.

mod models;
pub mod random;
mod spectral;

pub use models::{model_library, sigma_x, sigma_y, sigma_z, Kick, KickGenerator, ModelInfo, ModelSystem, MODELS};
pub use spectral::{
    spectral_projections, spectral_projections_unitary, wrap_phase, zeno_hamiltonian, zeno_hamiltonian_single,
    SpectralDecomposition, SpectralEntry, SpectralKind,
};
