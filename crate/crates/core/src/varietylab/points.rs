use rand::Rng;

use super::VarietyError;
use crate::exactfield::{Field, PrimeField, PrimeFieldElement, ReduceModP, Reduction, Ring};
use crate::linalg::Matrix;
use crate::pfaffian::SkewLinearFamily;
use crate::polyring::SparsePolynomial;

pub fn reduce_poly<F: Field + ReduceModP>(
    f: &SparsePolynomial<F>,
    r: &Reduction,
) -> Result<SparsePolynomial<PrimeFieldElement>, VarietyError> {
    Ok(f.map_coeffs(&r.field, |c| c.reduce(r))?)
}

pub fn reduce_matrix<F: Field + ReduceModP>(
    m: &Matrix<F>,
    r: &Reduction,
) -> Result<Matrix<PrimeFieldElement>, VarietyError> {
    let rows = m
        .to_rows()
        .iter()
        .map(|row| row.iter().map(|c| c.reduce(r)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, m.cols(), &r.field.zero()));
    }
    Ok(Matrix::from_rows(rows))
}

/// Reduces a parameter-free family entrywise.
pub fn reduce_family<F: Field + ReduceModP>(
    fam: &SkewLinearFamily<F>,
    r: &Reduction,
) -> Result<SkewLinearFamily<PrimeFieldElement>, VarietyError> {
    let mats = fam
        .basis_matrices()
        .iter()
        .map(|m| reduce_matrix(m, r))
        .collect::<Result<Vec<_>, _>>()?;
    let lam = match fam.lambda_matrices() {
        None => None,
        Some(c) => Some(c.iter().map(|m| reduce_matrix(m, r)).collect::<Result<Vec<_>, _>>()?),
    };
    Ok(SkewLinearFamily::new(fam.size(), &r.field, mats, lam)?)
}

/// Scales so that the last nonzero coordinate is 1.
pub fn normalize_projective<F: Field>(v: &[F]) -> Option<Vec<F>> {
    let last = v.iter().rposition(|c| !c.is_zero())?;
    let inv = v[last].inv()?;
    Some(v.iter().map(|c| c.clone() * inv.clone()).collect())
}

/// All points of `P^{dim-1}(GF(p))`, chart by chart, with last nonzero
/// coordinate 1.
pub fn projective_points(dim: usize, field: PrimeField) -> impl Iterator<Item = Vec<PrimeFieldElement>> {
    let p = field.p();
    (0..dim).flat_map(move |chart| {
        let count = p.pow(chart as u32);
        (0..count).map(move |mut idx| {
            let mut v = vec![field.zero(); dim];
            for c in v.iter_mut().take(chart) {
                *c = field.elem((idx % p) as i64);
                idx /= p;
            }
            v[chart] = field.one();
            v
        })
    })
}

pub fn random_point<R: Rng>(n: usize, field: PrimeField, rng: &mut R) -> Vec<PrimeFieldElement> {
    loop {
        let v: Vec<_> = (0..n).map(|_| field.elem(rng.gen_range(0..field.p()) as i64)).collect();
        if let Some(v) = normalize_projective(&v) {
            return v;
        }
    }
}

/// Distinct points of `V(f)` found by intersecting random lines with the
/// hypersurface and testing every parameter value.
pub fn sample_hypersurface_points<R: Rng>(
    f: &SparsePolynomial<PrimeFieldElement>,
    count: usize,
    rng: &mut R,
) -> Vec<Vec<PrimeFieldElement>> {
    let field = f.ctx().clone();
    let n = f.nvars();
    let mut out: Vec<Vec<PrimeFieldElement>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut attempts = 0usize;
    while out.len() < count && attempts < 1000 * count.max(1) {
        attempts += 1;
        let a = random_point(n, field, rng);
        let b = random_point(n, field, rng);
        let mut hits = Vec::new();
        for t in field.elements() {
            let x: Vec<_> = a.iter().zip(&b).map(|(ai, bi)| *ai + t * *bi).collect();
            if let Some(x) = normalize_projective(&x) {
                if f.eval(&x).is_zero() {
                    hits.push(x);
                }
            }
        }
        if f.eval(&b).is_zero() {
            hits.push(b.clone());
        }
        if hits.is_empty() {
            continue;
        }
        let x = hits.swap_remove(rng.gen_range(0..hits.len()));
        if seen.insert(x.clone()) {
            out.push(x);
        }
    }
    out
}
