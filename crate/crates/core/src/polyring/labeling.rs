use super::{PolyError, SignedPermutation, SparsePolynomial};
use crate::exactfield::Field;

/// Largest variable count for the exhaustive labeling search.
pub const MAX_LABELING_VARS: usize = 9;

/// Advances `a` to the next permutation in lexicographic order.
pub fn next_permutation(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Searches bijections `β` from variable indices to the points of an abstract
/// G-set, in lexicographic order, for the first one under which `f` is
/// semi-invariant for every generator. `generators` act on the points.
pub fn find_equivariant_labeling<F: Field>(
    f: &SparsePolynomial<F>,
    generators: &[SignedPermutation],
) -> Result<Option<Vec<usize>>, PolyError> {
    let n = f.nvars();
    if n > MAX_LABELING_VARS {
        return Err(PolyError::SearchSpaceTooLarge { nvars: n });
    }
    if let Some(g) = generators.iter().find(|g| g.len() != n) {
        return Err(PolyError::ArityMismatch { left: n, right: g.len() });
    }
    let mut beta: Vec<usize> = (0..n).collect();
    loop {
        let ok = generators
            .iter()
            .all(|g| g.conjugate_by(&beta).semi_invariance(f).is_semi_invariant);
        if ok {
            return Ok(Some(beta));
        }
        if !next_permutation(&mut beta) {
            return Ok(None);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_in_order() {
        let mut a = vec![0, 1, 2];
        let mut seen = vec![a.clone()];
        while next_permutation(&mut a) {
            seen.push(a.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![0, 2, 1]);
        assert_eq!(seen[5], vec![2, 1, 0]);
    }
}
