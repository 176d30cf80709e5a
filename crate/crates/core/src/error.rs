//! Crate-wide error type.

use crate::pointer::Representation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("axis is not unit length (norm² = {norm2})")]
    NonUnitAxis { norm2: f64 },
    #[error("state amplitudes have zero norm")]
    ZeroState,
    #[error("operator is not Hermitian")]
    NotHermitian,
    #[error("basis is degenerate or not orthonormal")]
    DegenerateBasis,
    #[error("orthogonal selection: |⟨Ψfin|Ψin⟩| ≤ 1e-12, weak value undefined")]
    OrthogonalSelection,
    #[error("orthogonal rotated selection for particle {particle}")]
    OrthogonalRotatedSelection { particle: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid extent [{lo}, {hi}] insufficient, requires at least [{required_lo}, {required_hi}]")]
    GridTooSmall {
        lo: f64,
        hi: f64,
        required_lo: f64,
        required_hi: f64,
    },
    #[error("expected {expected:?} representation, got {got:?}")]
    WrongRepresentation {
        expected: Representation,
        got: Representation,
    },
    #[error("wavefunctions live on different grids or representations")]
    GridMismatch,
    #[error("empty state: norm² below 1e-12")]
    EmptyState,
    #[error("null post-selection: probability below 1e-14")]
    NullPostSelection,
    #[error("no post-selections accepted out of {trials} trials")]
    NoPostSelections { trials: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Distinguishes bad input (CLI exit code 1) from failures that can only
    /// surface while running a valid scenario (exit code 2).
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::OrthogonalSelection
                | Error::OrthogonalRotatedSelection { .. }
                | Error::EmptyState
                | Error::NullPostSelection
                | Error::NoPostSelections { .. }
                | Error::Io(_)
        )
    }
}
