//! The single convention identifying Λ²V with skew matrices.
//!
//! Basis `e_i ∧ e_j` (`i < j`) in lexicographic order of `(i, j)`;
//! `e_i ∧ e_j ↦ E_ij − E_ji`; the pairing of `e_i ∧ e_j` with
//! `e_i* ∧ e_j*` is 1. A bivector `ω ∈ Λ²V*` then evaluates on a pair of
//! vectors as `ω(u, v) = uᵀ Ω v` with `Ω` its skew matrix.

use crate::exactfield::Ring;
use crate::linalg::Matrix;

/// `n(n−1)/2`.
pub fn wedge_dim(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// The index pairs `(i, j)`, `i < j`, in basis order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(wedge_dim(n));
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

/// Position of `e_i ∧ e_j` (`i < j`) in the basis.
pub fn pair_index(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Skew matrix of a bivector given in wedge coordinates.
pub fn bivector_to_skew<T: Ring>(coords: &[T], n: usize) -> Matrix<T> {
    assert_eq!(coords.len(), wedge_dim(n));
    let mut m = Matrix::zeros(n, n, &coords[0]);
    for (k, &(i, j)) in pairs(n).iter().enumerate() {
        m[(i, j)] = coords[k].clone();
        m[(j, i)] = -coords[k].clone();
    }
    m
}

/// Wedge coordinates read from the upper triangle of a matrix.
pub fn skew_to_bivector<T: Ring>(m: &Matrix<T>) -> Vec<T> {
    let n = m.rows();
    pairs(n).into_iter().map(|(i, j)| m[(i, j)].clone()).collect()
}

/// `Λ²A` in the wedge basis: the `((a,b),(i,j))` entry is
/// `A_ai A_bj − A_bi A_aj`.
pub fn exterior_square_matrix<T: Ring>(a: &Matrix<T>) -> Matrix<T> {
    let n = a.rows();
    let ps = pairs(n);
    Matrix::from_fn(ps.len(), ps.len(), a.zero_elem(), |r, c| {
        let (x, y) = ps[r];
        let (i, j) = ps[c];
        let p = &a[(x, i)];
        let q = &a[(y, j)];
        let s = &a[(y, i)];
        let t = &a[(x, j)];
        let first = if p.is_zero() || q.is_zero() { a.zero_elem().clone() } else { p.clone() * q.clone() };
        let second = if s.is_zero() || t.is_zero() { a.zero_elem().clone() } else { s.clone() * t.clone() };
        first - second
    })
}

/// `ω(u, v)` for `ω` in wedge coordinates.
pub fn evaluate_pair<T: Ring>(omega: &[T], u: &[T], v: &[T]) -> T {
    let n = u.len();
    let mut acc = u[0].zero_like();
    for (k, (i, j)) in pairs(n).into_iter().enumerate() {
        if omega[k].is_zero() {
            continue;
        }
        acc = acc + omega[k].clone() * (u[i].clone() * v[j].clone() - u[j].clone() * v[i].clone());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{int, Rational};

    #[test]
    fn indices() {
        let ps = pairs(6);
        assert_eq!(ps.len(), 15);
        for (k, &(i, j)) in ps.iter().enumerate() {
            assert_eq!(pair_index(i, j, 6), k);
        }
    }

    #[test]
    fn exterior_square_is_multiplicative_and_matches_congruence() {
        let a = Matrix::from_fn(4, 4, &int(0), |i, j| int(((i * 3 + j * 5) % 7) as i64 - 3));
        let b = Matrix::from_fn(4, 4, &int(0), |i, j| int(((i + 2 * j) % 5) as i64 - 2));
        assert_eq!(
            exterior_square_matrix(&a.mul(&b)),
            exterior_square_matrix(&a).mul(&exterior_square_matrix(&b))
        );
        let w: Vec<Rational> = (0..6).map(|k| int(k as i64 - 2)).collect();
        let image = exterior_square_matrix(&a).mul_vec(&w);
        let congruent = a.mul(&bivector_to_skew(&w, 4)).mul(&a.transpose());
        assert_eq!(bivector_to_skew(&image, 4), congruent);
    }
}
