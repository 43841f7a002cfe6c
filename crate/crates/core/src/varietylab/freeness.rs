use serde::{Deserialize, Serialize};

use super::points::{normalize_projective, reduce_matrix};
use super::VarietyError;
use crate::exactfield::{Field, PrimeFieldElement, ReduceModP, Reduction};
use crate::reptheory::MatrixRepresentation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementFreeness {
    pub element: usize,
    pub word: String,
    /// Number of sample points moved by the element.
    pub moved: usize,
    pub possibly_in_kernel: bool,
    /// Exact test: the element acts on `L` by a scalar.
    pub scalar_on_l: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessReport {
    pub samples: usize,
    pub elements: Vec<ElementFreeness>,
    /// Nontrivial elements acting trivially on `P(L)`.
    pub kernel: Vec<usize>,
    pub generically_free: bool,
}

/// `rep` is the action on the coordinates of `L`; sample points live in
/// `P(L)(GF(p))`.
pub fn generic_freeness_sample<F: Field + ReduceModP>(
    rep: &MatrixRepresentation<F>,
    r: &Reduction,
    points: &[Vec<PrimeFieldElement>],
) -> Result<FreenessReport, VarietyError> {
    let tables = rep.tables().clone();
    let scalars = rep.scalar_elements();
    let mut elements = Vec::new();
    let mut kernel = Vec::new();
    for g in 0..rep.order() {
        if g == tables.identity() {
            continue;
        }
        let a = reduce_matrix(rep.matrix(g), r)?;
        let moved = points
            .iter()
            .filter(|x| normalize_projective(&a.mul_vec(x)) != normalize_projective(x))
            .count();
        let possibly = moved == 0;
        let scalar_on_l = possibly.then(|| scalars.contains(&g));
        if scalar_on_l == Some(true) {
            kernel.push(g);
        }
        elements.push(ElementFreeness {
            element: g,
            word: tables.word_string(g),
            moved,
            possibly_in_kernel: possibly,
            scalar_on_l,
        });
    }
    Ok(FreenessReport {
        samples: points.len(),
        generically_free: kernel.is_empty(),
        elements,
        kernel,
    })
}
