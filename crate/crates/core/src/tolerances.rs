use serde::{Deserialize, Serialize};

/// Central tolerance record. Every validating constructor and every
/// clustering step draws its thresholds from here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Relative bound on `|M - M^H|_F / |M|_F`.
    pub hermiticity: f64,
    /// Absolute bound on `|U^H U - I|_F`.
    pub unitarity: f64,
    /// Absolute bound on `|P^2 - P|_F`.
    pub idempotency: f64,
    /// Absolute bound on `|tr P - rank|`.
    pub projector_trace: f64,
    /// Absolute gap below which eigenvalues or eigenphases are merged.
    pub cluster: f64,
    /// Jacobi stops once off-diagonal Frobenius mass is below this times `|H|_F`.
    pub jacobi_off_diagonal: f64,
    pub jacobi_max_sweeps: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            hermiticity: 1e-12,
            unitarity: 1e-10,
            idempotency: 1e-10,
            projector_trace: 1e-8,
            cluster: 1e-8,
            jacobi_off_diagonal: 1e-14,
            jacobi_max_sweeps: 100,
        }
    }
}

impl Tolerances {
    /// Tighter validation thresholds; the eigensolver settings are unchanged.
    pub fn strict() -> Self {
        Tolerances {
            hermiticity: 1e-14,
            unitarity: 1e-12,
            idempotency: 1e-12,
            projector_trace: 1e-10,
            ..Tolerances::default()
        }
    }

    /// Resolve a named profile (`default` or `strict`).
    pub fn profile(name: &str) -> Option<Self> {
        match name {
            "default" => Some(Tolerances::default()),
            "strict" => Some(Tolerances::strict()),
            _ => None,
        }
    }
}
