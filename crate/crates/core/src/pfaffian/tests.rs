use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::exactfield::{int, PrimeField, PrimeFieldElement, Rational, Ring};
use crate::linalg::Matrix;
use crate::polyring::{parse_polynomial, SparsePolynomial};

/// Signed sum over perfect matchings, sign = (−1)^{number of crossings}.
fn matching_oracle<T: Ring>(m: &Matrix<T>) -> T {
    fn matchings(rest: &[usize]) -> Vec<Vec<(usize, usize)>> {
        if rest.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for k in 1..rest.len() {
            let others: Vec<usize> = rest[1..].iter().copied().filter(|&x| x != rest[k]).collect();
            for mut tail in matchings(&others) {
                tail.push((rest[0], rest[k]));
                out.push(tail);
            }
        }
        out
    }
    let n = m.rows();
    let mut acc = m.zero_elem().clone();
    for mt in matchings(&(0..n).collect::<Vec<_>>()) {
        let mut crossings = 0;
        for &(a, b) in &mt {
            for &(c, d) in &mt {
                if a < c && c < b && b < d {
                    crossings += 1;
                }
            }
        }
        let mut t = m.zero_elem().one_like();
        for &(a, b) in &mt {
            t = t * m[(a, b)].clone();
        }
        acc = if crossings % 2 == 0 { acc + t } else { acc - t };
    }
    acc
}

fn generic_skew(n: usize) -> Matrix<SparsePolynomial<Rational>> {
    let nv = n * (n - 1) / 2;
    let zero = SparsePolynomial::zero(nv, &());
    let mut k = 0;
    let mut m = Matrix::zeros(n, n, &zero);
    for i in 0..n {
        for j in i + 1..n {
            m[(i, j)] = SparsePolynomial::var(nv, k, &());
            m[(j, i)] = -SparsePolynomial::var(nv, k, &());
            k += 1;
        }
    }
    m
}

#[test]
fn small_pfaffians() {
    let m = generic_skew(2);
    assert_eq!(pfaffian(&m).unwrap(), SparsePolynomial::var(1, 0, &()));
    let m4 = generic_skew(4);
    let names = ["m12", "m13", "m14", "m23", "m24", "m34"];
    let expected = parse_polynomial("m12 m34 - m13 m24 + m14 m23", &names, &(), &[]).unwrap();
    assert_eq!(pfaffian(&m4).unwrap(), expected);
    assert_eq!(matching_oracle(&m4), expected);
}

#[test]
fn generic_six_by_six_matches_oracle_and_determinant() {
    let m = generic_skew(6);
    let pf = pfaffian(&m).unwrap();
    assert_eq!(pf.num_terms(), 15);
    assert_eq!(pf, matching_oracle(&m));
    assert_eq!(pf.clone() * pf, determinant(&m));
}

#[test]
fn errors() {
    let odd = Matrix::zeros(3, 3, &int(0));
    assert_eq!(pfaffian(&odd), Err(PfaffianError::OddSize(3)));
    let not_skew = Matrix::identity(2, &int(0));
    assert_eq!(pfaffian(&not_skew), Err(PfaffianError::NotSkew));
    assert_eq!(pfaffian(&Matrix::zeros(10, 10, &int(0))), Err(PfaffianError::TooLarge(10)));
}

fn random_skew(rng: &mut ChaCha8Rng, gf: PrimeField, n: usize) -> Matrix<PrimeFieldElement> {
    let mut m = Matrix::zeros(n, n, &gf.zero());
    for i in 0..n {
        for j in i + 1..n {
            let v = gf.elem(rng.gen_range(0..29));
            m[(i, j)] = v;
            m[(j, i)] = -v;
        }
    }
    m
}

#[test]
fn covariance_under_congruence() {
    let gf = PrimeField::new(29).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [4, 6] {
        for _ in 0..20 {
            let m = random_skew(&mut rng, gf, n);
            let rho = Matrix::from_fn(n, n, &gf.zero(), |_, _| gf.elem(rng.gen_range(0..29)));
            let lhs = pfaffian(&rho.mul(&m).mul(&rho.transpose())).unwrap();
            assert_eq!(lhs, rho.det() * pfaffian(&m).unwrap());
            let pf = pfaffian(&m).unwrap();
            assert_eq!(pf * pf, m.det());
        }
    }
}

#[test]
fn single_bivector_family() {
    let mut e12 = vec![int(0); 6];
    e12[0] = int(1);
    let fam = build_family(&[e12], 4, &()).unwrap();
    let sym = fam.symbolic();
    assert_eq!(sym[(0, 1)], SparsePolynomial::var(1, 0, &()));
    assert_eq!(sym[(1, 0)], -SparsePolynomial::var(1, 0, &()));
    assert!(sym[(2, 3)].is_zero());
    assert_eq!(
        build_family::<Rational>(&[vec![int(1); 5]], 4, &()),
        Err(PfaffianError::DimensionMismatch)
    );
}

#[test]
fn kernel_ranks() {
    let gf = PrimeField::new(29).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m = random_skew(&mut rng, gf, 6);
    let mut basis = Vec::new();
    for k in 0..15 {
        let mut v = vec![gf.zero(); 15];
        v[k] = gf.one();
        basis.push(v);
    }
    let fam = build_family(&basis, 6, &gf).unwrap();
    let x = crate::wedge::skew_to_bivector(&m);
    let k = kernel_at_point(&fam, &x);
    if !pfaffian(&m).unwrap().is_zero() {
        assert_eq!(k.rank, 6);
        assert!(k.kernel.is_empty());
    }
    let low = Matrix::from_fn(6, 6, &gf.zero(), |i, j| match (i, j) {
        (0, 1) => gf.one(),
        (1, 0) => -gf.one(),
        (2, 3) => gf.elem(2),
        (3, 2) => -gf.elem(2),
        _ => gf.zero(),
    });
    let k = kernel_at_point(&fam, &crate::wedge::skew_to_bivector(&low));
    assert_eq!(k.rank, 4);
    assert_eq!(k.kernel.len(), 2);
    for u in &k.kernel {
        assert!(low.mul_vec(u).iter().all(|x| x.is_zero()));
    }
}

#[test]
fn family_file_round_trip() {
    let gf = PrimeField::new(29).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mats: Vec<_> = (0..3).map(|_| random_skew(&mut rng, gf, 4)).collect();
    let lam: Vec<_> = (0..3).map(|_| random_skew(&mut rng, gf, 4)).collect();
    let fam = SkewLinearFamily::new(4, &gf, mats, Some(lam)).unwrap();
    let file = FamilyFile::from_family(&fam);
    assert_eq!(file.vars.last().map(String::as_str), Some("lambda"));
    let text = serde_json::to_string(&file).unwrap();
    let back: FamilyFile = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_family::<PrimeFieldElement>(&gf).unwrap(), fam);
    let pf = fam.pfaffian();
    assert_eq!(pf.nvars(), 4);
    let l = gf.elem(5);
    assert_eq!(fam.at_lambda(&l).pfaffian(), pf.specialize(3, &l));
}
