use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

use super::matrix::ComplexMatrix;

/// Matrix certified Hermitian at construction. Stored exactly Hermitian
/// (the validated input is replaced by its Hermitian part).
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator(ComplexMatrix);

impl HermitianOperator {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(m, &Tolerances::default())
    }

    pub fn with_tolerances(m: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        m.check_finite()?;
        let deviation = m.hermiticity_defect();
        let limit = tol.hermiticity * m.frob_norm();
        if deviation > limit {
            return Err(Error::NotHermitian { deviation, limit });
        }
        Ok(HermitianOperator(m.hermitian_part()))
    }

    /// For matrices Hermitian by construction (sums, `P H P`, ...): symmetrize
    /// without checking.
    pub(crate) fn from_trusted(m: ComplexMatrix) -> Self {
        HermitianOperator(m.hermitian_part())
    }

    pub fn zeros(dim: usize) -> Self {
        HermitianOperator(ComplexMatrix::zeros(dim))
    }

    pub fn identity(dim: usize) -> Self {
        HermitianOperator(ComplexMatrix::identity(dim))
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        HermitianOperator(ComplexMatrix::from_real_diag(diag))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn add(&self, other: &HermitianOperator) -> Result<Self> {
        self.0.check_same_dim(&other.0)?;
        Ok(HermitianOperator(&self.0 + &other.0))
    }

    pub fn sub(&self, other: &HermitianOperator) -> Result<Self> {
        self.0.check_same_dim(&other.0)?;
        Ok(HermitianOperator(&self.0 - &other.0))
    }

    pub fn scale(&self, s: f64) -> Self {
        HermitianOperator(self.0.scale_real(s))
    }

    /// `self + s * other`
    pub fn add_scaled(&self, s: f64, other: &HermitianOperator) -> Result<Self> {
        self.0.check_same_dim(&other.0)?;
        Ok(HermitianOperator(&self.0 + &other.0.scale_real(s)))
    }
}

/// Matrix certified unitary at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryOperator(ComplexMatrix);

impl UnitaryOperator {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(m, &Tolerances::default())
    }

    pub fn with_tolerances(m: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        m.check_finite()?;
        let deviation = m.unitarity_defect();
        if deviation > tol.unitarity {
            return Err(Error::NotUnitary { deviation, limit: tol.unitarity });
        }
        Ok(UnitaryOperator(m))
    }

    pub(crate) fn from_trusted(m: ComplexMatrix) -> Self {
        UnitaryOperator(m)
    }

    pub fn identity(dim: usize) -> Self {
        UnitaryOperator(ComplexMatrix::identity(dim))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn adjoint(&self) -> Self {
        UnitaryOperator(self.0.adjoint())
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.0.unitarity_defect()
    }
}

/// Orthogonal projector (Hermitian and idempotent) with its integer rank.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    matrix: ComplexMatrix,
    rank: usize,
}

impl Projector {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(m, &Tolerances::default())
    }

    pub fn with_tolerances(m: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let h = HermitianOperator::with_tolerances(m, tol).map_err(|e| match e {
            Error::NotHermitian { deviation, .. } => {
                Error::NotProjector { reason: format!("not Hermitian (|P - P^H|_F = {deviation:e})") }
            }
            other => other,
        })?;
        let m = h.into_matrix();
        let idem = (&(&m * &m) - &m).frob_norm();
        if idem > tol.idempotency {
            return Err(Error::NotProjector {
                reason: format!("|P^2 - P|_F = {idem:e} exceeds {:e}", tol.idempotency),
            });
        }
        let tr = m.trace().re;
        let rank = tr.round().max(0.0) as usize;
        if (tr - rank as f64).abs() > tol.projector_trace {
            return Err(Error::NotProjector { reason: format!("trace {tr} is not an integer rank") });
        }
        Ok(Projector { matrix: m, rank })
    }

    /// Orthogonal projector onto the span of orthonormal vectors.
    pub fn from_orthonormal(dim: usize, vectors: &[Vec<super::C64>]) -> Result<Self> {
        let mut m = ComplexMatrix::zeros(dim);
        for v in vectors {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
            m = &m + &ComplexMatrix::outer(v);
        }
        Projector::new(m)
    }

    /// Projector onto computational basis state `k`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut m = ComplexMatrix::zeros(dim);
        m[(k, k)] = super::matrix::ONE;
        Projector { matrix: m, rank: 1 }
    }

    pub fn identity(dim: usize) -> Self {
        Projector { matrix: ComplexMatrix::identity(dim), rank: dim }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `I - P`
    pub fn complement(&self) -> Projector {
        let n = self.dim();
        Projector { matrix: &ComplexMatrix::identity(n) - &self.matrix, rank: n - self.rank }
    }

    pub fn as_hermitian(&self) -> HermitianOperator {
        HermitianOperator::from_trusted(self.matrix.clone())
    }

    /// `P M P`
    pub fn compress(&self, m: &ComplexMatrix) -> ComplexMatrix {
        &(&self.matrix * m) * &self.matrix
    }
}
