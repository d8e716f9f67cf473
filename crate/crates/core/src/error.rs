use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimension {0} (allowed range 1..={max})", max = crate::linalg::MAX_DIM)]
    InvalidDimension(usize),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("matrix is not unitary (max |UU† - I| = {0:e})")]
    NotUnitary(f64),

    #[error("matrix is not Hermitian (max |A - A†| = {0:e})")]
    NotHermitian(f64),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("permutation {0} is not cyclic under the chosen labeling")]
    NotCyclic(String),

    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("invalid spin quantum number {0} (must be a positive multiple of 1/2)")]
    InvalidSpin(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
