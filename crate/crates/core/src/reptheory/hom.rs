use rayon::prelude::*;

use super::{character, multiplicity, MatrixRepresentation, RepError, Subspace};
use crate::exactfield::Field;
use crate::linalg::Matrix;

/// Basis of `Hom_G(V, W)`, each map a `dim W × dim V` matrix.
#[derive(Clone, Debug)]
pub struct EquivariantHomPencil<F: Field> {
    pub maps: Vec<Matrix<F>>,
    pub source_dim: usize,
    pub target_dim: usize,
    /// Seeds `(a, b)` of the elementary matrices whose averages were kept.
    pub seeds: Vec<(usize, usize)>,
}

/// Parameter of a pencil member `T₁ + λT₂`; `Infinity` selects `T₂`.
#[derive(Clone, Debug, PartialEq)]
pub enum PencilParameter<F> {
    Finite(F),
    Infinity,
}

/// Image of a pencil member, with a flag for dimension drops.
#[derive(Clone, Debug)]
pub struct PencilMember<F: Field> {
    pub subspace: Subspace<F>,
    pub map: Matrix<F>,
    pub degenerate: bool,
}

fn flatten<F: Field>(m: &Matrix<F>) -> Vec<F> {
    m.entries().to_vec()
}

/// Averages the elementary seeds `E_ab` (row-major order) over the group,
/// `T = (1/|G|) Σ_g ρ_W(g) E_ab ρ_V(g)⁻¹`, keeping independent results
/// until the character-predicted dimension is reached.
pub fn equivariant_hom_basis<F: Field>(
    v: &MatrixRepresentation<F>,
    w: &MatrixRepresentation<F>,
) -> Result<EquivariantHomPencil<F>, RepError> {
    if !std::sync::Arc::ptr_eq(v.tables(), w.tables()) {
        return Err(RepError::DifferentGroups);
    }
    let predicted = multiplicity(&character(w), &character(v))? as usize;
    let (dv, dw) = (v.dim(), w.dim());
    let ctx = v.ctx().clone();
    let zero = F::zero(&ctx);
    let order = F::from_i64(&ctx, v.order() as i64);
    let inv_order = order.inv().ok_or(RepError::DimensionMismatch)?;
    let t = v.tables();
    let mut maps = Vec::new();
    let mut seeds = Vec::new();
    let mut span = Subspace::zero_space(dv * dw, &ctx);
    'seeds: for a in 0..dw {
        for b in 0..dv {
            if maps.len() == predicted {
                break 'seeds;
            }
            // entry (i, j) is Σ_g W(g)_{i a} V(g⁻¹)_{b j}
            let avg = (0..v.order())
                .into_par_iter()
                .map(|g| {
                    let wg = w.matrix(g);
                    let vinv = v.matrix(t.inverse(g));
                    let mut m = Matrix::zeros(dw, dv, &zero);
                    for i in 0..dw {
                        let x = &wg[(i, a)];
                        if x.is_zero() {
                            continue;
                        }
                        for j in 0..dv {
                            let y = &vinv[(b, j)];
                            if !y.is_zero() {
                                m[(i, j)] = x.clone() * y.clone();
                            }
                        }
                    }
                    m
                })
                .reduce(|| Matrix::zeros(dw, dv, &zero), |p, q| p.add(&q))
                .scale(&inv_order);
            if avg.is_zero() {
                continue;
            }
            let flat = flatten(&avg);
            if span.contains(&flat) {
                continue;
            }
            span = span.sum(&Subspace::span(&[flat], dv * dw, &ctx));
            maps.push(avg);
            seeds.push((a, b));
        }
    }
    if maps.len() < predicted {
        return Err(RepError::DimensionShortfall {
            predicted,
            found: maps.len(),
        });
    }
    Ok(EquivariantHomPencil {
        maps,
        source_dim: dv,
        target_dim: dw,
        seeds,
    })
}

impl<F: Field> EquivariantHomPencil<F> {
    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    /// `W(g) T = T V(g)` for every element and every basis map.
    pub fn verify_equivariance(&self, v: &MatrixRepresentation<F>, w: &MatrixRepresentation<F>) -> bool {
        (0..v.order()).into_par_iter().all(|g| {
            self.maps
                .iter()
                .all(|t| w.matrix(g).mul(t) == t.mul(v.matrix(g)))
        })
    }

    /// `Σ c_i T_i`.
    pub fn combination(&self, coeffs: &[F]) -> Result<Matrix<F>, RepError> {
        if coeffs.len() != self.maps.len() || coeffs.is_empty() {
            return Err(RepError::DimensionMismatch);
        }
        let mut acc = self.maps[0].scale(&coeffs[0]);
        for (t, c) in self.maps.iter().zip(coeffs).skip(1) {
            acc = acc.add(&t.scale(c));
        }
        Ok(acc)
    }

    /// Image of `T₁ + λT₂` (or `T₂` at infinity); a one-map pencil ignores λ.
    pub fn member(&self, lambda: &PencilParameter<F>) -> Result<PencilMember<F>, RepError> {
        if self.maps.is_empty() {
            return Err(RepError::DimensionMismatch);
        }
        let map = match (lambda, self.maps.len()) {
            (_, 1) => self.maps[0].clone(),
            (PencilParameter::Finite(l), _) => self.maps[0].add(&self.maps[1].scale(l)),
            (PencilParameter::Infinity, _) => self.maps[1].clone(),
        };
        Ok(self.member_of_map(map))
    }

    pub fn member_of_map(&self, map: Matrix<F>) -> PencilMember<F> {
        let ctx = map.zero_elem().context();
        let subspace = Subspace::image(&map, &ctx);
        PencilMember {
            degenerate: subspace.dim() < self.source_dim,
            subspace,
            map,
        }
    }
}

/// Convenience wrapper for [`EquivariantHomPencil::member`].
pub fn pencil_member<F: Field>(
    pencil: &EquivariantHomPencil<F>,
    lambda: &PencilParameter<F>,
) -> Result<PencilMember<F>, RepError> {
    pencil.member(lambda)
}
