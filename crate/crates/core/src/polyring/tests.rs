use proptest::prelude::*;

use super::*;
use crate::exactfield::{int, rational, CyclotomicField, CyclotomicNumber, Field, Rational, Ring};
use crate::linalg::Matrix;

const NAMES: [&str; 7] = ["x1", "x2", "x3", "x4", "x5", "x6", "lambda"];

fn q(s: &str, n: usize) -> SparsePolynomial<Rational> {
    parse_polynomial(s, &NAMES[..n], &(), &[]).unwrap()
}

fn cubic(k: &CyclotomicField) -> SparsePolynomial<CyclotomicNumber> {
    parse_polynomial(
        "x1^2 x2 + x2^2 x3 + x3^2 x4 + x4^2 x5 + x5^2 x6 + x1 x6^2 + lambda^2 (x1 x3 x5 + x2 x4 x6)",
        &NAMES,
        k,
        &[],
    )
    .unwrap()
}

#[test]
fn arithmetic() {
    assert_eq!(q("x1", 2) * q("x2", 2), q("x1*x2", 2));
    assert_eq!(q("x1+x2", 2) * q("x1-x2", 2), q("x1^2 - x2^2", 2));
    let f = q("3/2 x1^2 x2 - x2", 2);
    assert_eq!(f.clone() + SparsePolynomial::zero(2, &()), f);
    assert!(matches!(
        q("x1", 2).checked_mul(&q("x1", 3)),
        Err(PolyError::ArityMismatch { left: 2, right: 3 })
    ));
    assert_eq!(f.to_string(), "3/2*x1^2*x2 - x2");
}

#[test]
fn derivatives() {
    let f = q("x1^2 x2", 3);
    assert_eq!(f.partial_derivative(0), q("2 x1 x2", 3));
    assert!(f.partial_derivative(2).is_zero());
    let k = CyclotomicField::new(7).unwrap();
    let d = cubic(&k).partial_derivative(1);
    let expected = parse_polynomial("x1^2 + 2 x2 x3 + lambda^2 x4 x6", &NAMES, &k, &[]).unwrap();
    assert_eq!(d, expected);
}

#[test]
fn cubic_is_invariant_under_g_and_anti_invariant_under_h() {
    let k = CyclotomicField::new(7).unwrap();
    let f = cubic(&k);
    let mut diag: Vec<CyclotomicNumber> = [1, 5, 4, 6, 2, 3].iter().map(|&a| k.zeta_pow(a)).collect();
    diag.push(k.one());
    let g = LinearSubstitution::diagonal(&diag, Some("g")).unwrap();
    let rep = semi_invariance(&f, &g).unwrap();
    assert!(rep.is_semi_invariant);
    assert_eq!(rep.scalar, Some(k.one()));

    // x_i ↦ −x_{i+1}, x6 ↦ −x1, lambda fixed
    let mut target: Vec<usize> = (1..6).collect();
    target.push(0);
    target.push(6);
    let mut negate = vec![true; 6];
    negate.push(false);
    let h = SignedPermutation::new(target, negate).unwrap();
    let rep = semi_invariance(&f, &h.to_substitution(&k)).unwrap();
    assert_eq!(rep.scalar, Some(-k.one()));
    assert_eq!(h.semi_invariance(&f).scalar, Some(-k.one()));
}

#[test]
fn non_invariance() {
    let swap = SignedPermutation::permutation(vec![1, 0]).unwrap();
    let rep = semi_invariance(&q("x1", 2), &swap.to_substitution(&())).unwrap();
    assert!(!rep.is_semi_invariant);
    assert!(rep.scalar.is_none());
    assert_eq!(
        semi_invariance(&SparsePolynomial::<Rational>::zero(2, &()), &swap.to_substitution(&())),
        Err(PolyError::ZeroPolynomial)
    );
}

#[test]
fn identity_substitution() {
    let f = q("x1", 3);
    assert_eq!(substitute_linear(&f, &LinearSubstitution::identity(3, &())).unwrap(), f);
}

#[test]
fn labeling_search() {
    let fermat = q("x1^2+x2^2+x3^2+x4^2+x5^2+x6^2+lambda^2", 7);
    let cycle = SignedPermutation::permutation(vec![1, 2, 3, 4, 5, 6, 0]).unwrap();
    assert_eq!(
        find_equivariant_labeling(&fermat, &[cycle]).unwrap(),
        Some((0..7).collect::<Vec<_>>())
    );
    let swap = SignedPermutation::permutation(vec![1, 0]).unwrap();
    assert_eq!(find_equivariant_labeling(&q("x1^2 x2", 2), &[swap]).unwrap(), None);
    let big = SparsePolynomial::<Rational>::one(10, &());
    assert!(matches!(
        find_equivariant_labeling(&big, &[]),
        Err(PolyError::SearchSpaceTooLarge { nvars: 10 })
    ));
}

#[test]
fn json_round_trip() {
    let k = CyclotomicField::new(7).unwrap();
    let f = cubic(&k).scale(&(k.zeta() + k.from_rational(rational(1, 3))));
    let file = PolynomialFile::from_polynomial(&f, None);
    let text = serde_json::to_string(&file).unwrap();
    let back: PolynomialFile = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_polynomial::<CyclotomicNumber>(&k).unwrap(), f);
    let plain: PolynomialFile =
        serde_json::from_str(r#"{"nvars":2,"terms":[{"exp":[2,1],"coeff":"1"},{"exp":[0,3],"coeff":"-1/2"}]}"#).unwrap();
    assert_eq!(plain.to_polynomial::<Rational>(&()).unwrap(), q("x1^2 x2 - x2^3/2", 2));
}

#[test]
fn parser_errors() {
    assert!(parse_polynomial::<Rational>("x1 + ", &NAMES, &(), &[]).is_err());
    assert!(parse_polynomial::<Rational>("y", &NAMES, &(), &[]).is_err());
    assert!(parse_polynomial::<Rational>("x1/x2", &NAMES, &(), &[]).is_err());
    assert!(parse_polynomial::<Rational>("(x1", &NAMES, &(), &[]).is_err());
}

#[test]
fn specialization() {
    let k = CyclotomicField::new(7).unwrap();
    let f2 = cubic(&k).specialize(6, &k.from_i64(2));
    assert_eq!(f2.nvars(), 6);
    assert_eq!(f2.coeff_of(&[1, 0, 1, 0, 1, 0]), k.from_i64(4));
    assert!(f2.is_homogeneous());
}

fn small_poly(n: usize) -> impl Strategy<Value = SparsePolynomial<Rational>> {
    prop::collection::vec((prop::collection::vec(0u16..3, n), -5i64..=5), 1..6).prop_map(move |terms| {
        SparsePolynomial::from_terms(n, &(), terms.into_iter().map(|(e, c)| (Monomial::new(&e), int(c))))
    })
}

fn homogeneous_cubic(n: usize) -> impl Strategy<Value = SparsePolynomial<Rational>> {
    small_poly(n).prop_map(|p| p.homogeneous_part(3) + p.homogeneous_part(2) * SparsePolynomial::var(p.nvars(), 0, &()))
}

fn invertible(n: usize) -> impl Strategy<Value = LinearSubstitution<Rational>> {
    prop::collection::vec(-3i64..=3, n * n)
        .prop_filter_map("singular", move |v| {
            let m = Matrix::from_fn(n, n, &int(0), |i, j| int(v[i * n + j]));
            LinearSubstitution::new(m, None).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn substitution_round_trip(f in small_poly(3), s in invertible(3)) {
        let g = substitute_linear(&f, &s).unwrap();
        prop_assert_eq!(substitute_linear(&g, &s.inverse()).unwrap(), f);
    }

    #[test]
    fn euler_identity(f in homogeneous_cubic(4)) {
        let n = f.nvars();
        let mut acc = SparsePolynomial::zero(n, &());
        for i in 0..n {
            acc = acc + SparsePolynomial::var(n, i, &()) * f.partial_derivative(i);
        }
        prop_assert_eq!(acc, f.scale(&int(3)));
    }

    #[test]
    fn substitution_composes(f in small_poly(3), s in invertible(3), t in invertible(3)) {
        let two_step = substitute_linear(&substitute_linear(&f, &s).unwrap(), &t).unwrap();
        prop_assert_eq!(two_step, substitute_linear(&f, &s.then(&t)).unwrap());
    }

    #[test]
    fn signed_permutation_matches_matrix(f in small_poly(4), perm in Just(vec![2usize, 0, 3, 1]), signs in prop::collection::vec(any::<bool>(), 4)) {
        let sp = SignedPermutation::new(perm, signs).unwrap();
        prop_assert_eq!(sp.apply(&f), substitute_linear(&f, &sp.to_substitution(&())).unwrap());
    }
}

#[test]
fn scalars_multiply_along_words() {
    let k = CyclotomicField::new(7).unwrap();
    let f = cubic(&k);
    let mut diag: Vec<CyclotomicNumber> = [1, 5, 4, 6, 2, 3].iter().map(|&a| k.zeta_pow(a)).collect();
    diag.push(k.one());
    let g = LinearSubstitution::diagonal(&diag, Some("g")).unwrap();
    let h = SignedPermutation::new(vec![1, 2, 3, 4, 5, 0, 6], vec![true, true, true, true, true, true, false])
        .unwrap()
        .to_substitution::<CyclotomicNumber>(&k);
    let words = [g.then(&h), h.then(&h), h.then(&g).then(&h).then(&h)];
    let expected = [-k.one(), k.one(), -k.one()];
    for (w, e) in words.iter().zip(expected) {
        let rep = semi_invariance(&f, w).unwrap();
        assert_eq!(rep.scalar, Some(e));
    }
    assert!(Ring::is_one(&k.one()));
    let _ = Field::characteristic(&k.one());
}
