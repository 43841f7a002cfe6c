//! Skew-symmetric matrices of linear forms and their Pfaffians.

mod expand;
mod family;

use thiserror::Error;

use crate::exactfield::FieldError;

pub use expand::{determinant, pfaffian, MAX_PFAFFIAN_SIZE};
pub use family::{
    build_family, build_family_from_subspace, congruence_semi_invariance, kernel_at_point, CongruenceOutcome,
    FamilyFile, KernelResult, SkewLinearFamily,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PfaffianError {
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("odd matrix size {0}")]
    OddSize(usize),
    #[error("matrix size {0} exceeds 8")]
    TooLarge(usize),
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[cfg(test)]
mod tests;
