use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{evolution, ComplexMatrix, HermitianOperator, Projector, UnitaryOperator, C64};
use crate::rng::SplitMix64;

use super::random::random_hermitian;

/// A kick unitary, together with its `tau0 * H_c` origin when it was built
/// from a generator.
#[derive(Debug, Clone)]
pub struct Kick {
    pub unitary: UnitaryOperator,
    pub generator: Option<KickGenerator>,
}

#[derive(Debug, Clone)]
pub struct KickGenerator {
    pub tau0: f64,
    pub hc: HermitianOperator,
}

impl Kick {
    /// `U_kick = exp(-i tau0 H_c)`
    pub fn from_generator(hc: HermitianOperator, tau0: f64) -> Result<Self> {
        let unitary = evolution(&hc, tau0)?;
        Ok(Kick { unitary, generator: Some(KickGenerator { tau0, hc }) })
    }

    pub fn from_unitary(unitary: UnitaryOperator) -> Self {
        Kick { unitary, generator: None }
    }
}

/// A named test system. `split` holds the `(A, B)` pair used by product
/// formulas (for `random-split`, `h = A + B`); `auxiliary` is the coupling or
/// measurement generator `H_c`.
#[derive(Debug, Clone)]
pub struct ModelSystem {
    pub name: String,
    pub dim: usize,
    pub seed: u64,
    pub h: HermitianOperator,
    pub auxiliary: Option<HermitianOperator>,
    pub projector: Option<Projector>,
    pub split: Option<(HermitianOperator, HermitianOperator)>,
    pub kick: Option<Kick>,
}

pub struct ModelInfo {
    pub name: &'static str,
    /// `None` means any dimension of at least 2.
    pub fixed_dim: Option<usize>,
    pub summary: &'static str,
}

pub const MODELS: &[ModelInfo] = &[
    ModelInfo { name: "qubit-sx-pz", fixed_dim: Some(2), summary: "H = sx, P = |0><0|, split (sx, sz), H_c = sz" },
    ModelInfo {
        name: "qubit-sx-scz",
        fixed_dim: Some(2),
        summary: "H = sx, H_c = sz, kick exp(-i (pi/2) sz), P = |0><0|",
    },
    ModelInfo {
        name: "random-split",
        fixed_dim: None,
        summary: "H = T + V with seeded random T, V; H_c = V, kick exp(-i V), P onto first ceil(d/2) basis states",
    },
    ModelInfo {
        name: "three-level-block",
        fixed_dim: Some(3),
        summary: "H = all-ones, H_c = diag(0,1,1), kick diag(1,-1,-1), P = diag(1,0,0)",
    },
    ModelInfo {
        name: "kicked-floquet",
        fixed_dim: None,
        summary: "seeded random kinetic T and potential V; H = T, H_c = V, kick exp(-i V)",
    },
];

pub fn sigma_x() -> HermitianOperator {
    HermitianOperator::from_trusted(ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).expect("2x2 literal"))
}

pub fn sigma_y() -> HermitianOperator {
    let i = C64::new(0.0, 1.0);
    HermitianOperator::from_trusted(
        ComplexMatrix::from_rows(&[&[C64::new(0.0, 0.0), -i], &[i, C64::new(0.0, 0.0)]]).expect("2x2 literal"),
    )
}

pub fn sigma_z() -> HermitianOperator {
    HermitianOperator::from_real_diag(&[1.0, -1.0])
}

/// Look up a named model. Deterministic for fixed `(name, dim, seed)`.
pub fn model_library(name: &str, dim: usize, seed: u64) -> Result<ModelSystem> {
    let info = MODELS.iter().find(|m| m.name == name).ok_or_else(|| Error::UnknownModel(name.to_string()))?;
    match info.fixed_dim {
        Some(d) if d != dim => {
            return Err(Error::invalid("dim", format!("model `{name}` requires dim {d}, got {dim}")))
        }
        None if dim < 2 => return Err(Error::invalid("dim", format!("model `{name}` requires dim >= 2, got {dim}"))),
        _ => {}
    }

    let model = ModelSystem {
        name: name.to_string(),
        dim,
        seed,
        h: HermitianOperator::zeros(dim),
        auxiliary: None,
        projector: None,
        split: None,
        kick: None,
    };
    let model = match name {
        "qubit-sx-pz" => ModelSystem {
            h: sigma_x(),
            auxiliary: Some(sigma_z()),
            projector: Some(Projector::basis(2, 0)),
            split: Some((sigma_x(), sigma_z())),
            ..model
        },
        "qubit-sx-scz" => ModelSystem {
            h: sigma_x(),
            auxiliary: Some(sigma_z()),
            projector: Some(Projector::basis(2, 0)),
            split: Some((sigma_x(), sigma_z())),
            kick: Some(Kick::from_generator(sigma_z(), PI / 2.0)?),
            ..model
        },
        "random-split" => {
            let mut rng = SplitMix64::new(seed);
            let t = random_hermitian(dim, &mut rng);
            let v = random_hermitian(dim, &mut rng);
            let keep = dim.div_ceil(2);
            let diag: Vec<f64> = (0..dim).map(|k| if k < keep { 1.0 } else { 0.0 }).collect();
            ModelSystem {
                h: t.add(&v)?,
                auxiliary: Some(v.clone()),
                projector: Some(Projector::new(ComplexMatrix::from_real_diag(&diag))?),
                kick: Some(Kick::from_generator(v.clone(), 1.0)?),
                split: Some((t, v)),
                ..model
            }
        }
        "three-level-block" => {
            let ones = HermitianOperator::from_trusted(ComplexMatrix::from_fn(3, |_, _| C64::new(1.0, 0.0)));
            let hc = HermitianOperator::from_real_diag(&[0.0, 1.0, 1.0]);
            ModelSystem {
                h: ones,
                auxiliary: Some(hc.clone()),
                projector: Some(Projector::basis(3, 0)),
                kick: Some(Kick::from_generator(hc, PI)?),
                ..model
            }
        }
        "kicked-floquet" => {
            let mut rng = SplitMix64::new(seed);
            let t = random_hermitian(dim, &mut rng);
            let v = random_hermitian(dim, &mut rng);
            ModelSystem {
                h: t.clone(),
                auxiliary: Some(v.clone()),
                kick: Some(Kick::from_generator(v.clone(), 1.0)?),
                split: Some((t, v)),
                ..model
            }
        }
        _ => unreachable!("registry and constructor disagree on `{name}`"),
    };
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qubit_lookup() {
        let m = model_library("qubit-sx-pz", 2, 99).unwrap();
        assert_eq!(m.h, sigma_x());
        assert_eq!(m.projector.unwrap(), Projector::basis(2, 0));
    }

    #[test]
    fn random_split_is_deterministic() {
        let a = model_library("random-split", 8, 42).unwrap();
        let b = model_library("random-split", 8, 42).unwrap();
        assert_eq!(a.h, b.h);
        let (t, v) = a.split.unwrap();
        assert_eq!((t.clone(), v.clone()), b.split.unwrap());
        assert_ne!(t, v);
        assert!(a.h.matrix().max_abs_diff(&(t.matrix() + v.matrix())) < 1e-15);
    }

    #[test]
    fn three_level_block() {
        let m = model_library("three-level-block", 3, 0).unwrap();
        assert!(m.h.matrix().as_slice().iter().all(|z| *z == C64::new(1.0, 0.0)));
        let kick = m.kick.unwrap();
        assert!(kick.unitary.matrix().max_abs_diff(&ComplexMatrix::from_real_diag(&[1.0, -1.0, -1.0])) < 1e-15);
        assert!((kick.generator.unwrap().tau0 - PI).abs() == 0.0);
    }

    #[test]
    fn unknown_and_wrong_dim() {
        assert_eq!(model_library("nope", 2, 0).unwrap_err(), Error::UnknownModel("nope".into()));
        assert!(model_library("qubit-sx-pz", 3, 0).is_err());
        assert!(model_library("random-split", 1, 0).is_err());
    }

    #[test]
    fn every_registered_model_builds() {
        for info in MODELS {
            let dim = info.fixed_dim.unwrap_or(4);
            let m = model_library(info.name, dim, 5).unwrap();
            assert_eq!(m.h.dim(), dim);
            if let Some(a) = &m.auxiliary {
                assert_eq!(a.dim(), dim);
            }
        }
    }
}
