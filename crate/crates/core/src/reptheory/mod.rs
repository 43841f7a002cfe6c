//! Finite matrix groups, characters, equivariant maps and invariant
//! subspaces.

mod character;
mod group;
mod hom;
mod json;
mod profile;
mod subspace;

use thiserror::Error;

use crate::exactfield::FieldError;

pub use character::{character, exterior_square_character, inner_product, multiplicity, CharacterVector};
pub use group::{enumerate_group, GroupTables, MatrixRepresentation, DEFAULT_ELEMENT_CAP};
pub use hom::{equivariant_hom_basis, pencil_member, EquivariantHomPencil, PencilMember, PencilParameter};
pub use json::GroupFile;
pub use profile::{class_and_degree_profile, conjugacy_classes, derived_subgroup, DegreeProfile};
pub use subspace::Subspace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("group enumeration exceeded {cap} elements")]
    CapExceeded { cap: usize },
    #[error("matrix dimensions do not agree")]
    DimensionMismatch,
    #[error("generator matrix is not invertible")]
    NotInvertible,
    #[error("representations are over different group enumerations")]
    DifferentGroups,
    #[error("generator images violate the relation at {element}·{generator}")]
    NotAHomomorphism { element: String, generator: String },
    #[error("character inner product {0} is not a non-negative integer")]
    NonIntegerMultiplicity(String),
    #[error("averaging produced {found} independent maps, characters predict {predicted}")]
    DimensionShortfall { predicted: usize, found: usize },
    #[error("group file field {0} does not match the requested field")]
    FieldMismatch(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[cfg(test)]
mod tests;
