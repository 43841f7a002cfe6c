use super::*;
use crate::exactfield::{int, CyclotomicField, CyclotomicNumber, Field, Rational, Ring};
use crate::linalg::Matrix;

fn agl7() -> MatrixRepresentation<CyclotomicNumber> {
    let k = CyclotomicField::new(7).unwrap();
    let g = Matrix::diagonal(&[1, 5, 4, 6, 2, 3].map(|a| k.zeta_pow(a)));
    let h = Matrix::from_fn(6, 6, &k.zero(), |i, j| if j == (i + 1) % 6 { -k.one() } else { k.zero() });
    enumerate_group(&[g, h], &["g", "h"], &k, DEFAULT_ELEMENT_CAP).unwrap()
}

fn perm_matrix(p: &[usize]) -> Matrix<Rational> {
    Matrix::from_fn(p.len(), p.len(), &int(0), |i, j| int((p[j] == i) as i64))
}

#[test]
fn agl7_enumeration_and_characters() {
    let v = agl7();
    assert_eq!(v.order(), 42);
    assert!(v.is_faithful());
    let k = CyclotomicField::new(7).unwrap();
    let chi = character(&v);
    assert_eq!(chi.at(0), &k.from_i64(6));
    assert_eq!(chi.at(v.tables().generator(0)), &k.from_i64(-1));
    assert_eq!(chi.at(v.tables().generator(1)), &k.zero());
    assert!(chi.is_class_function(v.tables()));
    let chi2 = exterior_square_character(&chi, v.tables());
    assert_eq!(chi2.at(0), &k.from_i64(15));
    assert_eq!(chi2.at(v.tables().generator(0)), &k.one());
    assert_eq!(chi2, character(&v.exterior_square()));
    assert_eq!(multiplicity(&chi2, &chi).unwrap(), 2);
    assert_eq!(multiplicity(&chi, &chi).unwrap(), 1);
    let triv = character(&v.trivial());
    assert_eq!(multiplicity(&triv, &triv).unwrap(), 1);
}

#[test]
fn words_and_tables_are_consistent() {
    let v = agl7();
    let t = v.tables();
    for a in 0..t.order() {
        assert_eq!(t.mul(a, t.inverse(a)), 0);
        assert_eq!(v.matrix(t.square(a)), &v.matrix(a).mul(v.matrix(a)));
        assert_eq!(t.element_of_word(t.word(a)), a);
    }
    for a in (0..t.order()).step_by(5) {
        for b in (0..t.order()).step_by(7) {
            assert_eq!(v.matrix(t.mul(a, b)), &v.matrix(a).mul(v.matrix(b)));
        }
    }
    // shortlex order
    for a in 1..t.order() {
        let (w0, w1) = (t.word(a - 1), t.word(a));
        assert!(w0.len() < w1.len() || (w0.len() == w1.len() && w0 < w1));
    }
}

#[test]
fn pencil_of_maps_into_exterior_square() {
    let v = agl7();
    let w = v.exterior_square();
    let pencil = equivariant_hom_basis(&v, &w).unwrap();
    assert_eq!(pencil.dim(), 2);
    assert!(pencil.verify_equivariance(&v, &w));
    let k = CyclotomicField::new(7).unwrap();
    for lam in [k.from_i64(2), k.zeta() + k.from_i64(3)] {
        let m = pencil.member(&PencilParameter::Finite(lam)).unwrap();
        assert_eq!(m.subspace.dim(), 6);
        assert!(!m.degenerate);
        for g in 0..v.order() {
            assert!(m.subspace.is_stable_under(w.matrix(g)));
        }
        let perp = m.subspace.annihilator();
        assert_eq!(perp.dim(), 9);
        assert_eq!(perp.intersection_dim(&m.subspace), 0);
    }
    let at_inf = pencil.member(&PencilParameter::Infinity).unwrap();
    assert_eq!(at_inf.subspace.dim(), 6);
}

#[test]
fn schur_and_dihedral() {
    let k = CyclotomicField::new(5).unwrap();
    let w1 = |e: i64| Matrix::diagonal(&[k.zeta_pow(e), k.zeta_pow(-e)]);
    let s = Matrix::from_rows(vec![vec![k.zero(), k.one()], vec![k.one(), k.zero()]]);
    let g1 = w1(1).direct_sum(&w1(2));
    let g2 = s.direct_sum(&s);
    let v = enumerate_group(&[g1, g2], &["r", "s"], &k, DEFAULT_ELEMENT_CAP).unwrap();
    assert_eq!(v.order(), 10);
    let wp = v.from_generator_images(&[w1(1), s.clone()]).unwrap();
    let wpp = v.from_generator_images(&[w1(2), s.clone()]).unwrap();
    assert_eq!(equivariant_hom_basis(&wp, &wpp).unwrap().dim(), 0);
    assert_eq!(equivariant_hom_basis(&wp, &wp).unwrap().dim(), 1);
    assert!(matches!(
        v.from_generator_images(&[w1(1), w1(1)]),
        Err(RepError::NotAHomomorphism { .. })
    ));
}

#[test]
fn small_groups() {
    let id = Matrix::identity(2, &int(0));
    assert_eq!(enumerate_group(&[id], &["e"], &(), 10).unwrap().order(), 1);
    let c6 = enumerate_group(&[perm_matrix(&[1, 2, 3, 4, 5, 0])], &["c"], &(), 100).unwrap();
    let p = class_and_degree_profile(c6.tables());
    assert_eq!((p.class_count, p.linear_count), (6, 6));
    assert_eq!(p.degrees, Some(vec![1; 6]));
    let s3 = enumerate_group(&[perm_matrix(&[1, 2, 0]), perm_matrix(&[1, 0, 2])], &["a", "b"], &(), 100).unwrap();
    let p = class_and_degree_profile(s3.tables());
    assert_eq!((p.class_count, p.linear_count), (3, 2));
    assert_eq!(p.degrees, Some(vec![1, 1, 2]));
    assert!(matches!(
        enumerate_group(&[perm_matrix(&[1, 2, 3, 4, 5, 0])], &["c"], &(), 4),
        Err(RepError::CapExceeded { cap: 4 })
    ));
}

#[test]
fn agl7_profile() {
    let p = class_and_degree_profile(agl7().tables());
    assert_eq!(p.class_count, 7);
    assert_eq!(p.linear_count, 6);
    assert_eq!(p.degrees, Some(vec![1, 1, 1, 1, 1, 1, 6]));
}

#[test]
fn group_file_round_trip() {
    let v = agl7();
    let k = CyclotomicField::new(7).unwrap();
    let gens: Vec<_> = (0..2).map(|i| v.generator_matrix(i).clone()).collect();
    let file = GroupFile::from_matrices(&k, &gens, &["g", "h"]);
    let text = serde_json::to_string(&file).unwrap();
    let back: GroupFile = serde_json::from_str(&text).unwrap();
    assert_eq!(back.content_hash(), file.content_hash());
    assert_eq!(back.enumerate::<CyclotomicNumber>(&k).unwrap().order(), 42);
    assert!(back.enumerate::<Rational>(&()).is_err());
    let _ = Ring::is_zero(&k.zero());
    let _ = Field::characteristic(&k.zero());
}
