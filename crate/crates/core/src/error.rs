use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix data length {len} is not a square of a positive dimension")]
    NotSquare { len: usize },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian: |M - M^H|_F = {deviation:e} exceeds {limit:e}")]
    NotHermitian { deviation: f64, limit: f64 },

    #[error("matrix is not unitary: |U^H U - I|_F = {deviation:e} exceeds {limit:e}")]
    NotUnitary { deviation: f64, limit: f64 },

    #[error("matrix is not a projector: {reason}")]
    NotProjector { reason: String },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal mass {off_diagonal:e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("unknown model `{0}`")]
    UnknownModel(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }
}
