use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HardyError {
    #[error("invalid spin: {0}")]
    InvalidSpin(String),

    #[error("polar angle {0} rad outside the open interval (0, π)")]
    InvalidTheta(f64),

    #[error("azimuthal angle {0} rad is not finite")]
    InvalidPhi(f64),

    #[error("Gram-Schmidt needs at least one input vector")]
    EmptyInput,

    #[error("vector {index} has length {found}, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, found: usize },

    #[error("degenerate scenario: residual norm {0:e} of the q-target after projection")]
    DegenerateScenario(f64),

    #[error("S' rank {found}, expected {expected}")]
    SPrimeRank { expected: usize, found: usize },

    #[error("no closed form for spin {0}")]
    UnsupportedSpin(String),

    #[error("coefficient v0 vanishes (|v0| = {0:e}); the state would have q = 0")]
    VanishingV0(f64),

    #[error("state is not normalized: |ψ|² = {0}")]
    NotNormalized(f64),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, HardyError>;
