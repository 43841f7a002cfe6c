//! Sparse multivariate polynomials over the exact fields, linear
//! substitutions and semi-invariance tests.

mod json;
mod labeling;
mod monomial;
mod parse;
mod poly;
mod substitution;

use thiserror::Error;

use crate::exactfield::FieldError;

pub use json::{PolynomialFile, PolynomialTerm};
pub use labeling::{find_equivariant_labeling, next_permutation, MAX_LABELING_VARS};
pub use monomial::Monomial;
pub use parse::{parse_constant, parse_polynomial};
pub use poly::SparsePolynomial;
pub use substitution::{
    semi_invariance, substitute_linear, LinearSubstitution, SemiInvarianceReport, SignedPermutation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("substitution matrix is not invertible")]
    NotInvertible,
    #[error("labeling search over {nvars} variables exceeds the 9-variable limit")]
    SearchSpaceTooLarge { nvars: usize },
    #[error("the zero polynomial has no semi-invariance scalar")]
    ZeroPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[cfg(test)]
mod tests;
