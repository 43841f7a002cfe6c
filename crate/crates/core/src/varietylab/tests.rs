use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::exactfield::{int, PrimeField, PrimeFieldElement, Rational, Reduction, Ring};
use crate::linalg::Matrix;
use crate::pfaffian::{kernel_at_point, SkewLinearFamily};
use crate::polyring::{parse_polynomial, Monomial, SparsePolynomial};
use crate::verifyctl::{q7, FixtureRegistry};

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn mp(s: &str, names: &[&str], p: u64) -> ModPoly {
    ModPoly::from_sparse(&parse_polynomial::<PrimeFieldElement>(s, names, &gf(p), &[]).unwrap())
}

fn agl7_mod(p: u64, lambda: i64) -> (Reduction, SkewLinearFamily<PrimeFieldElement>) {
    let r = Reduction::with_root_of_order(p, 7).unwrap();
    let fam = FixtureRegistry::load().unwrap().agl7_family().unwrap().at_lambda(&q7(lambda));
    let fam = reduce_family(&fam, &r).unwrap();
    (r, fam)
}

fn smooth_at(lambda: i64, p: u64) -> SmoothnessVerdict {
    let reg = FixtureRegistry::load().unwrap();
    let f = reg.agl7_family().unwrap().at_lambda(&q7(lambda)).pfaffian();
    let r = Reduction::with_root_of_order(p, 7).unwrap();
    let v = reg.agl7_group().unwrap();
    let strata = v.matrices().iter().map(|m| reduce_matrix(m, &r).unwrap()).collect();
    smoothness_check(&f, &r, &SmoothnessOptions { strata, ..Default::default() }).unwrap()
}

#[test]
fn gb_monomial_toy() {
    let names = ["x", "y"];
    let gens = [mp("x^2", &names, 29), mp("x*y", &names, 29)];
    let gb = buchberger(&gens, DEFAULT_PAIR_BUDGET).unwrap();
    assert!(gb.verify(&gens));
    assert_eq!(gb.basis.len(), 2);
    assert!(gb.contains(&mp("x^3 + 5*x*y^2", &names, 29)));
    assert!(!gb.contains(&mp("y^2", &names, 29)));
    assert_eq!(gb.power_in_ideal(0, 5), Some(2));
    assert_eq!(gb.power_in_ideal(1, 5), None);
}

#[test]
fn gb_maximal_irrelevant() {
    let names = ["x", "y"];
    let gens = [mp("x", &names, 29), mp("y", &names, 29)];
    let gb = buchberger(&gens, DEFAULT_PAIR_BUDGET).unwrap();
    let lms: Vec<&Monomial> = gb.basis.iter().map(|g| g.lm()).collect();
    assert_eq!(lms.len(), 2);
    assert!(lms.contains(&&Monomial::var(2, 0)) && lms.contains(&&Monomial::var(2, 1)));
    assert_eq!(gb.power_in_ideal(0, 3), Some(1));
    assert_eq!(gb.power_in_ideal(1, 3), Some(1));
    assert!(!gb.is_unit_ideal());
}

#[test]
fn gb_substitution_oracle() {
    let names = ["x", "y"];
    let gens = [mp("x^2 - y", &names, 29), mp("y^2 - x", &names, 29)];
    let gb = buchberger(&gens, DEFAULT_PAIR_BUDGET).unwrap();
    assert!(gb.verify(&gens));
    // y = x^2 turns y^2 - x into x^4 - x
    assert!(gb.contains(&mp("x^4 - x", &names, 29)));
    assert!(!gb.contains(&mp("x^3 - x", &names, 29)));
    assert!(!gb.is_unit_ideal());
}

#[test]
fn gb_unit_ideal_and_budget() {
    let names = ["x", "y"];
    let gens = [mp("x*y - 1", &names, 7), mp("x", &names, 7)];
    assert!(buchberger(&gens, DEFAULT_PAIR_BUDGET).unwrap().is_unit_ideal());
    let gens = [mp("x^3 - y^2 + x*y", &names, 7), mp("y^3 - x^2 - 1", &names, 7)];
    assert!(matches!(buchberger(&gens, 0), Err(VarietyError::BudgetExceeded { .. })));
}

#[test]
fn smooth_for_lambda_two() {
    for p in [29, 43] {
        let v = smooth_at(2, p);
        assert_eq!(v.status, SmoothnessStatus::Smooth, "p = {p}: {}", v.reason);
        assert!(v.exponents.iter().all(|e| e.is_some_and(|n| n <= 24)));
    }
}

#[test]
fn singular_for_lambda_one_with_checked_witness() {
    let reg = FixtureRegistry::load().unwrap();
    let f = reg.agl7_family().unwrap().at_lambda(&q7(1)).pfaffian();
    for p in [29, 43] {
        let v = smooth_at(1, p);
        assert_eq!(v.status, SmoothnessStatus::SingularCertified);
        let w = v.witness.unwrap().prime_coords().unwrap();
        let r = Reduction::with_root_of_order(p, 7).unwrap();
        let fp = reduce_poly(&f, &r).unwrap();
        let x: Vec<_> = w.iter().map(|&c| r.field.elem(c as i64)).collect();
        assert!(fp.eval(&x).is_zero());
        for d in fp.gradient() {
            assert!(d.eval(&x).is_zero());
        }
    }
}

#[test]
fn lambda_zero_pfaffian_vanishes() {
    let v = smooth_at(0, 29);
    assert_eq!(v.status, SmoothnessStatus::SingularCertified);
    assert!(v.witness.is_some());
}

#[test]
fn fermat_restriction_is_smooth() {
    let s = FixtureRegistry::load().unwrap().segre().unwrap();
    let r = Reduction::with_root_of_order(29, 7).unwrap();
    let v = smoothness_check(&s.restricted_fermat(), &r, &SmoothnessOptions::default()).unwrap();
    assert_eq!(v.status, SmoothnessStatus::Smooth);
}

#[test]
fn fermat_cone_is_singular_at_vertex() {
    let names = ["x", "y", "z", "w"];
    let f = parse_polynomial::<Rational>("x^3 + y^3 + z^3", &names, &(), &[]).unwrap();
    let v = smoothness_check(&f, &Reduction::new(29).unwrap(), &SmoothnessOptions::default()).unwrap();
    assert_eq!(v.status, SmoothnessStatus::SingularCertified);
    assert_eq!(v.witness.unwrap().prime_coords().unwrap(), vec![0, 0, 0, 1]);
}

#[test]
fn bad_reduction_and_budget() {
    let names = ["x", "y", "z"];
    let f = parse_polynomial::<Rational>("x^3 + y^3 + z^3", &names, &(), &[]).unwrap();
    assert!(matches!(
        smoothness_check(&f, &Reduction::new(3).unwrap(), &SmoothnessOptions::default()),
        Err(VarietyError::BadReduction { p: 3, .. })
    ));
    let opts = SmoothnessOptions {
        pair_budget: 0,
        ..Default::default()
    };
    let v = smoothness_check(&f, &Reduction::new(29).unwrap(), &opts).unwrap();
    assert_eq!(v.status, SmoothnessStatus::Unknown);
}

#[test]
fn census_matrix_annihilates_u() {
    let (r, fam) = agl7_mod(29, 2);
    let field = r.field;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let u = random_point(6, field, &mut rng);
        // B(u)_{ij} = sum_k u_k (B_i)_{kj}, so (B(u) u)_i = u^T B_i u
        for b in fam.basis_matrices() {
            let bu = b.mul_vec(&u);
            let s = u.iter().zip(&bu).fold(field.zero(), |acc, (a, c)| acc + *a * *c);
            assert!(s.is_zero());
        }
    }
}

/// L spanned by e1^ej: every u orthogonal to e1 has a large kernel.
fn degenerate_family(p: u64) -> SkewLinearFamily<PrimeFieldElement> {
    let field = gf(p);
    let mut mats = Vec::new();
    for j in 1..6 {
        let mut m = Matrix::zeros(6, 6, &field.zero());
        m[(0, j)] = field.one();
        m[(j, 0)] = -field.one();
        mats.push(m);
    }
    let mut m = Matrix::zeros(6, 6, &field.zero());
    m[(1, 2)] = field.one();
    m[(2, 1)] = -field.one();
    mats.push(m);
    SkewLinearFamily::new(6, &field, mats, None).unwrap()
}

#[test]
fn degenerate_family_flags_high_corank() {
    let c = k3_census(&degenerate_family(5), &CensusOptions::default()).unwrap();
    assert!(c.n3 > 0);
    assert_eq!(c.surface_count, None);
    assert_eq!(c.total, (5u64.pow(6) - 1) / 4);
    assert_eq!(c.n1 + c.n2 + c.n3, c.total);
}

#[test]
fn census_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let opts = CensusOptions {
        cache_dir: Some(dir.path().to_path_buf()),
        samples: 10,
        ..Default::default()
    };
    let fam = degenerate_family(7);
    let a = k3_census(&fam, &opts).unwrap();
    let b = k3_census(&fam, &opts).unwrap();
    assert!(!a.from_cache);
    assert!(b.from_cache);
    assert_eq!((a.n1, a.n2, a.n3, a.plane_count), (b.n1, b.n2, b.n3, b.plane_count));
    assert_eq!(a.samples, b.samples);
    assert_eq!(a.corank2_points, b.corank2_points);
}

#[test]
fn census_samples_are_isotropic() {
    let fam = degenerate_family(5);
    let field = gf(5);
    let c = k3_census(&fam, &CensusOptions::default()).unwrap();
    for plane in &c.samples {
        let [u, v] = plane.vectors(field);
        for b in fam.basis_matrices() {
            let bv = b.mul_vec(&v);
            let s = u.iter().zip(&bv).fold(field.zero(), |acc, (a, c)| acc + *a * *c);
            assert!(s.is_zero());
        }
    }
}

#[test]
fn equal_planes_are_degenerate() {
    let (_, fam) = agl7_mod(29, 2);
    let p = Plane {
        u: vec![1, 0, 0, 0, 0, 0],
        v: vec![0, 1, 0, 0, 0, 0],
    };
    assert!(matches!(
        line_from_surface_pair(&p, &p, &fam),
        Err(VarietyError::DegenerateSpan { dim: 2 })
    ));
}

#[test]
fn zero_covector_is_rejected() {
    let (r, fam) = agl7_mod(29, 2);
    let zero = vec![r.field.zero(); 6];
    assert!(matches!(linearization_fiber(&zero, &fam), Err(VarietyError::ZeroVector)));
}

#[test]
fn fiber_of_generic_covector_lies_on_cubic() {
    let (r, fam) = agl7_mod(29, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut points = 0;
    for _ in 0..30 {
        let v = random_point(6, r.field, &mut rng);
        if let FiberOutcome::Point { x, on_cubic } = linearization_fiber(&v, &fam).unwrap() {
            assert!(on_cubic);
            let x: Vec<_> = x.iter().map(|&c| r.field.elem(c as i64)).collect();
            assert!(pf_at(&fam, &x).is_zero());
            assert!(fam.matrix_at(&x).mul_vec(&v).iter().all(|c| c.is_zero()));
            points += 1;
        }
    }
    assert!(points >= 25);
}

#[test]
fn sampled_points_lie_on_hypersurface() {
    let (_, fam) = agl7_mod(29, 2);
    let f = fam.pfaffian();
    let pts = sample_hypersurface_points(&f, 40, &mut ChaCha8Rng::seed_from_u64(1));
    assert_eq!(pts.len(), 40);
    for (i, x) in pts.iter().enumerate() {
        assert!(f.eval(x).is_zero());
        assert_eq!(normalize_projective(x).as_ref(), Some(x));
        assert!(!pts[..i].contains(x));
        assert_eq!(kernel_at_point(&fam, x).kernel.len() % 2, 0);
    }
}

#[test]
fn projective_point_count() {
    assert_eq!(projective_points(3, gf(5)).count(), 31);
    assert_eq!(projective_points(4, gf(3)).count(), 40);
}

#[test]
fn weights_reject_scalar_action() {
    let f = FixtureRegistry::load().unwrap().agl7_cubic_at(&q7(2)).unwrap();
    assert!(matches!(
        fixed_point_weights(&[0; 6], 7, &f),
        Err(VarietyError::NonIsolatedFixedPoint { .. })
    ));
    assert!(matches!(
        fixed_point_weights(&[0, 1, 2, 3, 4, 5], 7, &f),
        Err(VarietyError::NotSemiInvariant)
    ));
}

#[test]
fn weights_skip_points_off_the_hypersurface() {
    let names = ["x", "y", "z"];
    let f = parse_polynomial::<Rational>("x^3 + y^2*z", &names, &(), &[]).unwrap();
    // weights of x^3 and y^2 z agree mod 3 for exponents (0, 1, 1)
    let w = fixed_point_weights(&[0, 1, 1], 3, &f);
    assert!(matches!(w, Err(VarietyError::NonIsolatedFixedPoint { .. })));
    let f = parse_polynomial::<Rational>("x^3 + x*y^2 + z^3", &names, &(), &[]).unwrap();
    let w = fixed_point_weights(&[0, 3, 2], 6, &f).unwrap();
    let pts: Vec<usize> = w.iter().map(|p| p.point).collect();
    assert_eq!(pts, vec![1]);
    assert_eq!(w[0].normal, Some(0));
}

#[test]
fn dihedral_freeness_by_parity() {
    let reg = FixtureRegistry::load().unwrap();
    for (n, p) in [(3u32, 31u64), (4, 29), (5, 31)] {
        let d = reg.dihedral(n, 1).unwrap();
        let r = Reduction::with_root_of_order(p, n as u64).unwrap();
        let quadric = reduce_family(&d.family, &r).unwrap().pfaffian();
        let pts = sample_hypersurface_points(&quadric, 30, &mut ChaCha8Rng::seed_from_u64(n as u64));
        let rep = generic_freeness_sample(&d.l, &r, &pts).unwrap();
        assert_eq!(rep.generically_free, n % 2 == 1, "n = {n}");
        if n == 4 {
            assert_eq!(rep.kernel, vec![d.v.tables().element_of_word(&[0, 0])]);
        }
    }
}

#[test]
fn reduction_keeps_rational_coefficients() {
    let names = ["x", "y"];
    let f = parse_polynomial::<Rational>("1/2*x^2 - 3*y^2", &names, &(), &[]).unwrap();
    let r = Reduction::new(7).unwrap();
    let g = reduce_poly(&f, &r).unwrap();
    let x = [r.field.elem(2), r.field.elem(1)];
    // 1/2 * 4 - 3 = -1
    assert_eq!(g.eval(&x), r.field.elem(-1));
    assert_eq!(int(3), Rational::from_integer(3.into()));
}

fn small_poly() -> impl Strategy<Value = Vec<((u16, u16, u16), u64)>> {
    prop::collection::vec(((0u16..3, 0u16..3, 0u16..3), 1u64..11), 1..4)
}

fn to_mod(terms: &[((u16, u16, u16), u64)]) -> ModPoly {
    let field = gf(11);
    let mut f = SparsePolynomial::zero(3, &field);
    for &((a, b, c), k) in terms {
        let m = Monomial::new(&[a, b, c]);
        f = f + SparsePolynomial::from_terms(3, &field, vec![(m, field.elem(k as i64))]);
    }
    ModPoly::from_sparse(&f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gb_is_a_basis_of_the_ideal(g1 in small_poly(), g2 in small_poly(), h1 in small_poly(), h2 in small_poly()) {
        let gens = vec![to_mod(&g1), to_mod(&g2)];
        prop_assume!(gens.iter().all(|g| !g.is_zero()));
        let gb = buchberger(&gens, 20_000).unwrap();
        prop_assert!(gb.verify(&gens));
        // h1 g1 + h2 g2 lies in the ideal
        let comb = to_mod(&g1).to_sparse() * to_mod(&h1).to_sparse() + to_mod(&g2).to_sparse() * to_mod(&h2).to_sparse();
        prop_assert!(gb.contains(&ModPoly::from_sparse(&comb)));
        // leading monomials of a reduced basis do not divide each other
        for (i, a) in gb.basis.iter().enumerate() {
            for (j, b) in gb.basis.iter().enumerate() {
                prop_assert!(i == j || !a.lm().divides(b.lm()));
            }
        }
    }

    #[test]
    fn normalize_is_projective_invariant(seed in 0u64..1000, s in 1i64..29) {
        let field = gf(29);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_point(5, field, &mut rng);
        prop_assume!(x.iter().any(|c| !c.is_zero()));
        let y: Vec<_> = x.iter().map(|c| *c * field.elem(s)).collect();
        prop_assert_eq!(normalize_projective(&x), normalize_projective(&y));
    }
}
