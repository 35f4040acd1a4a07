use thiserror::Error;

use crate::register::Party;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |M - M^H| = {defect:e})")]
    NonHermitianInput { defect: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error(
        "Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off:e})"
    )]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("partial trace needs at least one kept slot")]
    EmptyKeepSet,

    #[error("partial transpose needs at least one transposed slot")]
    EmptyTransposeSet,

    #[error("slot index {index} out of range for a {len}-slot register")]
    SlotOutOfRange { index: usize, len: usize },

    #[error("invalid mode register: {0}")]
    InvalidRegister(String),

    #[error("not a density matrix: {0}")]
    NotADensityMatrix(String),

    #[error("party count {0} is too small (need at least 2)")]
    PartyCountTooSmall(usize),

    #[error("party count {0} is too large (at most {max})", max = crate::register::MAX_PARTIES)]
    TooManyParties(usize),

    #[error("state is not normalized (norm {norm})")]
    UnnormalizedState { norm: f64 },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("party {0} is not present in the register")]
    PartyNotInRegister(Party),

    #[error("pair measure needs two distinct parties, got {0} twice")]
    IdenticalParties(Party),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
