use thiserror::Error;

/// Errors raised by the simulation core.
///
/// Variants are grouped so a front end can tell parameter validation
/// failures apart from numerical preconditions; see [`Error::is_validation`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("E_J/E_C below transmon regime: ratio {ratio} < {min}")]
    BelowTransmonRegime { ratio: f64, min: f64 },

    #[error("unknown factor label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate factor label `{0}`")]
    DuplicateLabel(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operands live on different Hilbert spaces")]
    SpaceMismatch,

    #[error("operator is not hermitian (relative asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("not a valid density matrix: {0}")]
    InvalidState(String),

    #[error("point lies within {threshold:e} m of a current segment (distance {distance:e} m)")]
    SingularPoint { distance: f64, threshold: f64 },

    #[error("ensemble contains no spins (n * L_N^3 = {0:e})")]
    ZeroSpins(f64),

    #[error("ensemble cube intersects the transmon current path")]
    CubeIntersectsWire,

    #[error("not in the dispersive regime: |g/Delta| = {ratio:.4} exceeds {limit}")]
    NonDispersive { ratio: f64, limit: f64 },

    #[error("system is not resonant: relative detuning {0:e}")]
    NotResonant(f64),

    #[error("operation requires a `{expected}` system, got `{found}`")]
    KindMismatch { expected: String, found: String },

    #[error("invalid pulse sequence: {0}")]
    InvalidSequence(String),

    #[error("integrator did not converge: {0}")]
    NotConverged(String),
}

impl Error {
    /// True for errors caused by out-of-contract input values, as opposed to
    /// numerical preconditions such as a non-dispersive spec.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_)
                | Error::BelowTransmonRegime { .. }
                | Error::UnknownLabel(_)
                | Error::DuplicateLabel(_)
                | Error::DimensionMismatch { .. }
                | Error::SpaceMismatch
                | Error::InvalidState(_)
                | Error::ZeroSpins(_)
                | Error::CubeIntersectsWire
                | Error::KindMismatch { .. }
                | Error::InvalidSequence(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
