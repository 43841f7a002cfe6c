use rayon::prelude::*;

use super::{GroupTables, MatrixRepresentation, RepError};
use crate::exactfield::{as_nonnegative_integer, Field};

/// Character values, one per enumerated element.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterVector<F: Field> {
    pub values: Vec<F>,
}

impl<F: Field> CharacterVector<F> {
    pub fn at(&self, i: usize) -> &F {
        &self.values[i]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        CharacterVector {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        CharacterVector {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        CharacterVector {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a.clone() * b.clone()).collect(),
        }
    }

    /// Constant on conjugacy classes.
    pub fn is_class_function(&self, tables: &GroupTables) -> bool {
        (0..tables.order()).all(|g| (0..tables.order()).all(|h| self.values[tables.conjugate(g, h)] == self.values[g]))
    }
}

/// Traces of the representation matrices.
pub fn character<F: Field>(rep: &MatrixRepresentation<F>) -> CharacterVector<F> {
    CharacterVector {
        values: rep.matrices().par_iter().map(|m| m.trace()).collect(),
    }
}

/// `(χ(g)² − χ(g²))/2`.
pub fn exterior_square_character<F: Field>(chi: &CharacterVector<F>, tables: &GroupTables) -> CharacterVector<F> {
    let half = chi.values[0].from_i64_like(2).inv().expect("odd or zero characteristic");
    CharacterVector {
        values: (0..chi.len())
            .map(|g| {
                let x = chi.values[g].clone();
                (x.clone() * x - chi.values[tables.square(g)].clone()) * half.clone()
            })
            .collect(),
    }
}

/// `(1/|G|) Σ_g χ_a(g)·conj(χ_b(g))` as a non-negative integer.
pub fn inner_product<F: Field>(a: &CharacterVector<F>, b: &CharacterVector<F>) -> Result<F, RepError> {
    if a.len() != b.len() || a.is_empty() {
        return Err(RepError::DimensionMismatch);
    }
    let zero = a.values[0].zero_like();
    let sum = a
        .values
        .par_iter()
        .zip(&b.values)
        .map(|(x, y)| x.clone() * y.conj())
        .reduce(|| zero.clone(), |p, q| p + q);
    let n = a.values[0].from_i64_like(a.len() as i64);
    sum.div(&n).ok_or(RepError::DimensionMismatch)
}

pub fn multiplicity<F: Field>(a: &CharacterVector<F>, b: &CharacterVector<F>) -> Result<u64, RepError> {
    let v = inner_product(a, b)?;
    v.to_rational()
        .as_ref()
        .and_then(as_nonnegative_integer)
        .ok_or_else(|| RepError::NonIntegerMultiplicity(v.to_string()))
}
