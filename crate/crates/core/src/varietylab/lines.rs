use serde::{Deserialize, Serialize};

use super::census::Plane;
use super::points::normalize_projective;
use super::VarietyError;
use crate::exactfield::{PrimeField, PrimeFieldElement, Ring};
use crate::linalg::{dot, Matrix};
use crate::pfaffian::{kernel_at_point, pfaffian, SkewLinearFamily};
use crate::reptheory::Subspace;

/// A line in `P(L)` spanned by two points, in `x`-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineOnCubic {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    /// The Pfaffian vanishes at `a`, `b`, `a + b` and `a + 2b`.
    pub pf_vanishes: bool,
}

impl LineOnCubic {
    pub fn point(&self, field: PrimeField, s: u64, t: u64) -> Vec<PrimeFieldElement> {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(&a, &b)| field.elem(((a * s + b * t) % field.p()) as i64))
            .collect()
    }
}

fn flat(w: &[PrimeFieldElement]) -> Vec<u64> {
    w.iter().map(|c| c.value()).collect()
}

/// `ω(a, b) = aᵀ B b` for each basis form of the family.
fn pairings(fam: &SkewLinearFamily<PrimeFieldElement>, a: &[PrimeFieldElement], b: &[PrimeFieldElement]) -> Vec<PrimeFieldElement> {
    let zero = fam.ctx().zero();
    fam.basis_matrices().iter().map(|m| dot(a, &m.mul_vec(b), &zero)).collect()
}

pub fn pf_at(fam: &SkewLinearFamily<PrimeFieldElement>, x: &[PrimeFieldElement]) -> PrimeFieldElement {
    pfaffian(&fam.matrix_at(x)).expect("families are skew")
}

/// The forms of `L` vanishing on the 4-plane `P₁ + P₂`.
pub fn line_from_surface_pair(
    p1: &Plane,
    p2: &Plane,
    fam: &SkewLinearFamily<PrimeFieldElement>,
) -> Result<LineOnCubic, VarietyError> {
    let field = fam.ctx().clone();
    let n = fam.size();
    let [u1, v1] = p1.vectors(field);
    let [u2, v2] = p2.vectors(field);
    let w = Subspace::span(&[u1, v1, u2, v2], n, &field);
    if w.dim() < 4 {
        return Err(VarietyError::DegenerateSpan { dim: w.dim() });
    }
    let basis = w.basis();
    let mut rows = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            rows.push(pairings(fam, &basis[i], &basis[j]));
        }
    }
    let sol = Matrix::from_rows(rows).kernel();
    if sol.len() != 2 {
        return Err(VarietyError::UnexpectedSolutionDim { dim: sol.len() });
    }
    let a = &sol[0];
    let b = &sol[1];
    let at = |s: i64, t: i64| -> Vec<PrimeFieldElement> {
        a.iter().zip(b).map(|(x, y)| field.elem(s) * *x + field.elem(t) * *y).collect()
    };
    let pf_vanishes = [(1, 0), (0, 1), (1, 1), (1, 2)]
        .iter()
        .all(|&(s, t)| pf_at(fam, &at(s, t)).is_zero());
    Ok(LineOnCubic {
        a: flat(a),
        b: flat(b),
        pf_vanishes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FiberOutcome {
    /// The unique `x` with `M(x) v* = 0`; `on_cubic` records `Pf(M(x)) = 0`.
    Point { x: Vec<u64>, on_cubic: bool },
    /// The solution space has projective dimension ≥ 1 (or is empty).
    Defect { solution_dim: usize },
}

/// Solves `M(x) v* = 0` for `x`.
pub fn linearization_fiber(
    v: &[PrimeFieldElement],
    fam: &SkewLinearFamily<PrimeFieldElement>,
) -> Result<FiberOutcome, VarietyError> {
    if v.len() != fam.size() {
        return Err(VarietyError::DimensionMismatch);
    }
    if v.iter().all(|c| c.value() == 0) {
        return Err(VarietyError::ZeroVector);
    }
    let cols: Vec<Vec<PrimeFieldElement>> = fam.basis_matrices().iter().map(|b| b.mul_vec(v)).collect();
    let a = Matrix::from_rows(cols).transpose();
    let sol = a.kernel();
    if sol.len() != 1 {
        return Ok(FiberOutcome::Defect { solution_dim: sol.len() });
    }
    let x = normalize_projective(&sol[0]).expect("nonzero kernel vector");
    let on_cubic = pf_at(fam, &x).is_zero();
    Ok(FiberOutcome::Point { x: flat(&x), on_cubic })
}

/// Outcome of `x ↦ v* ∈ ker M(x) ↦ linearization_fiber(v*)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTrip {
    pub rank: usize,
    pub fiber: Option<FiberOutcome>,
    pub returned: bool,
}

/// Takes `v* = Σ c_i k_i` for the kernel basis `k_i` of `M(x)`.
pub fn round_trip_point(
    x: &[PrimeFieldElement],
    fam: &SkewLinearFamily<PrimeFieldElement>,
    combination: &[PrimeFieldElement],
) -> Result<RoundTrip, VarietyError> {
    let k = kernel_at_point(fam, x);
    let field = fam.ctx().clone();
    let mut v = vec![field.zero(); fam.size()];
    for (c, kv) in combination.iter().zip(&k.kernel) {
        for (vi, ki) in v.iter_mut().zip(kv) {
            *vi = *vi + *c * *ki;
        }
    }
    if v.iter().all(|c| c.value() == 0) {
        return Ok(RoundTrip {
            rank: k.rank,
            fiber: None,
            returned: false,
        });
    }
    let fiber = linearization_fiber(&v, fam)?;
    let target = normalize_projective(x).map(|y| flat(&y));
    let returned = matches!(&fiber, FiberOutcome::Point { x: y, .. } if Some(y) == target.as_ref());
    Ok(RoundTrip {
        rank: k.rank,
        fiber: Some(fiber),
        returned,
    })
}
