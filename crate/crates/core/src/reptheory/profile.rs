use serde::Serialize;

use super::GroupTables;

/// Conjugacy classes, abelianization and the forced irreducible degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub order: usize,
    pub class_sizes: Vec<usize>,
    pub class_count: usize,
    pub linear_count: usize,
    /// Present only when the degree constraints have a unique solution.
    pub degrees: Option<Vec<usize>>,
}

/// Partition of the elements into conjugacy classes, in order of first element.
pub fn conjugacy_classes(t: &GroupTables) -> Vec<Vec<usize>> {
    let n = t.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for g in 0..n {
        if class_of[g] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members: Vec<usize> = (0..n).map(|h| t.conjugate(g, h)).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            class_of[m] = id;
        }
        classes.push(members);
    }
    classes
}

/// Closure of the commutators `a b a⁻¹ b⁻¹` under multiplication.
pub fn derived_subgroup(t: &GroupTables) -> Vec<usize> {
    let n = t.order();
    let mut inside = vec![false; n];
    let mut gens = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let c = t.mul(t.mul(a, b), t.mul(t.inverse(a), t.inverse(b)));
            if !inside[c] {
                inside[c] = true;
                gens.push(c);
            }
        }
    }
    inside[0] = true;
    let mut elems: Vec<usize> = (0..n).filter(|&x| inside[x]).collect();
    let mut frontier = elems.clone();
    while let Some(x) = frontier.pop() {
        for &g in &gens {
            let y = t.mul(x, g);
            if !inside[y] {
                inside[y] = true;
                elems.push(y);
                frontier.push(y);
            }
        }
    }
    elems.sort_unstable();
    elems
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// All non-increasing sequences of `count` divisors `d ≥ 2` of `order` with
/// `Σ d² = target`.
fn degree_solutions(order: usize, count: usize, target: usize) -> Vec<Vec<usize>> {
    fn go(cands: &[usize], count: usize, target: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if out.len() > 1 {
            return;
        }
        if count == 0 {
            if target == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for &d in cands.iter().rev() {
            if d > max || d * d > target || d * d * count < target {
                continue;
            }
            cur.push(d);
            go(cands, count - 1, target - d * d, d, cur, out);
            cur.pop();
        }
    }
    let cands: Vec<usize> = divisors(order).into_iter().filter(|&d| d >= 2).collect();
    let mut out = Vec::new();
    go(&cands, count, target, usize::MAX, &mut Vec::new(), &mut out);
    out
}

pub fn class_and_degree_profile(t: &GroupTables) -> DegreeProfile {
    let classes = conjugacy_classes(t);
    let order = t.order();
    let linear = order / derived_subgroup(t).len();
    let k = classes.len();
    let degrees = if linear > k {
        None
    } else {
        let sols = degree_solutions(order, k - linear, order - linear);
        (sols.len() == 1).then(|| {
            let mut d = vec![1; linear];
            let mut rest = sols[0].clone();
            rest.reverse();
            d.extend(rest);
            d
        })
    };
    DegreeProfile {
        order,
        class_sizes: classes.iter().map(|c| c.len()).collect(),
        class_count: k,
        linear_count: linear,
        degrees,
    }
}
