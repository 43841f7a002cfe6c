use serde::{Deserialize, Serialize};

use super::VarietyError;
use crate::exactfield::Field;
use crate::polyring::{Monomial, SparsePolynomial};

/// Tangent data at a coordinate point `e_i` fixed by a diagonal element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointWeights {
    pub point: usize,
    /// `a_j − a_i mod n` for `j ≠ i`, in index order.
    pub ambient: Vec<(usize, u64)>,
    /// Smallest `j` with `∂f/∂x_j(e_i) ≠ 0`; `None` when the gradient vanishes.
    pub normal: Option<usize>,
    pub tangent: Vec<u64>,
}

/// `σ = diag(ζ^{a_1}, …, ζ^{a_m})` of order dividing `n`.
pub fn fixed_point_weights<F: Field>(
    exponents: &[u64],
    order: u64,
    f: &SparsePolynomial<F>,
) -> Result<Vec<FixedPointWeights>, VarietyError> {
    let m = f.nvars();
    if exponents.len() != m || order == 0 {
        return Err(VarietyError::DimensionMismatch);
    }
    let weight = |mono: &Monomial| {
        mono.exps()
            .iter()
            .zip(exponents)
            .map(|(&e, &a)| e as u64 * (a % order))
            .sum::<u64>()
            % order
    };
    let mut w = f.terms().map(|(mono, _)| weight(mono));
    if let Some(first) = w.next() {
        if w.any(|x| x != first) {
            return Err(VarietyError::NotSemiInvariant);
        }
    }
    let grad = f.gradient();
    let mut out = Vec::new();
    for i in 0..m {
        let deg = f.total_degree().unwrap_or(0) as u16;
        let mut pure = Monomial::one(m);
        pure.exps_mut()[i] = deg;
        if !f.coeff(&pure).is_zero() {
            continue;
        }
        let ambient: Vec<(usize, u64)> = (0..m)
            .filter(|&j| j != i)
            .map(|j| (j, (exponents[j] + order - exponents[i] % order) % order))
            .collect();
        if let Some(&(j, _)) = ambient.iter().find(|(_, w)| *w == 0) {
            return Err(VarietyError::NonIsolatedFixedPoint { point: i, direction: j });
        }
        // ∂f/∂x_j(e_i) is the coefficient of x_i^{d-1} in ∂f/∂x_j
        let mut probe = Monomial::one(m);
        probe.exps_mut()[i] = deg.saturating_sub(1);
        let normal = (0..m).find(|&j| j != i && !grad[j].coeff(&probe).is_zero());
        let tangent = ambient
            .iter()
            .filter(|(j, _)| Some(*j) != normal)
            .map(|&(_, w)| w)
            .collect();
        out.push(FixedPointWeights {
            point: i,
            ambient,
            normal,
            tangent,
        });
    }
    Ok(out)
}
