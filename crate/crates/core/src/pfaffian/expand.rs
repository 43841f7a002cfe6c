use std::collections::HashMap;

use super::PfaffianError;
use crate::exactfield::Ring;
use crate::linalg::Matrix;

/// Largest supported matrix size.
pub const MAX_PFAFFIAN_SIZE: usize = 8;

fn check_skew<T: Ring>(m: &Matrix<T>) -> Result<(), PfaffianError> {
    if !m.is_square() {
        return Err(PfaffianError::NotSkew);
    }
    if m.rows() % 2 == 1 {
        return Err(PfaffianError::OddSize(m.rows()));
    }
    if m.rows() > MAX_PFAFFIAN_SIZE {
        return Err(PfaffianError::TooLarge(m.rows()));
    }
    if !m.is_skew() {
        return Err(PfaffianError::NotSkew);
    }
    Ok(())
}

fn pf_rec<T: Ring>(m: &Matrix<T>, idx: &[usize], one: &T) -> T {
    if idx.is_empty() {
        return one.clone();
    }
    let first = idx[0];
    let mut acc = one.zero_like();
    for k in 1..idx.len() {
        let entry = &m[(first, idx[k])];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != idx[k]).collect();
        let minor = pf_rec(m, &rest, one);
        if minor.is_zero() {
            continue;
        }
        // column idx[k] sits at 1-based position k+1 in the first row
        let term = entry.clone() * minor;
        acc = if k % 2 == 1 { acc + term } else { acc - term };
    }
    acc
}

/// Pfaffian by expansion along the first row:
/// `Pf(M) = Σ_{j≥2} (−1)^j m_{1j} Pf(M without rows/columns 1, j)`.
pub fn pfaffian<T: Ring>(m: &Matrix<T>) -> Result<T, PfaffianError> {
    check_skew(m)?;
    let one = m.zero_elem().one_like();
    let idx: Vec<usize> = (0..m.rows()).collect();
    Ok(pf_rec(m, &idx, &one))
}

/// Determinant over any commutative ring by Laplace expansion along rows,
/// memoized on the set of remaining columns.
pub fn determinant<T: Ring>(m: &Matrix<T>) -> T {
    assert!(m.is_square() && m.rows() <= 16);
    let n = m.rows();
    let mut memo: HashMap<u32, T> = HashMap::new();
    fn go<T: Ring>(m: &Matrix<T>, row: usize, cols: u32, memo: &mut HashMap<u32, T>) -> T {
        let n = m.rows();
        if row == n {
            return m.zero_elem().one_like();
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = m.zero_elem().clone();
        let mut sign_pos = 0;
        for c in 0..n {
            if cols & (1 << c) == 0 {
                continue;
            }
            let e = &m[(row, c)];
            if !e.is_zero() {
                let minor = go(m, row + 1, cols & !(1 << c), memo);
                if !minor.is_zero() {
                    let t = e.clone() * minor;
                    acc = if sign_pos % 2 == 0 { acc + t } else { acc - t };
                }
            }
            sign_pos += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    go(m, 0, (1u32 << n) - 1, &mut memo)
}
