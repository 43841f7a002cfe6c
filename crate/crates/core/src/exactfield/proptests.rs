use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rational(n, d))
}

fn cyclo7() -> impl Strategy<Value = CyclotomicNumber> {
    prop::collection::vec(small_rational(), 6)
        .prop_map(|c| CyclotomicField::new(7).unwrap().from_coeffs(c).unwrap())
}

fn gf29() -> impl Strategy<Value = PrimeFieldElement> {
    (0i64..29).prop_map(|v| PrimeField::new(29).unwrap().elem(v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cyclotomic_field_axioms(a in cyclo7(), b in cyclo7(), c in cyclo7()) {
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        if !Ring::is_zero(&a) {
            prop_assert!(Ring::is_one(&(a.clone() * a.inv().unwrap())));
        }
    }

    #[test]
    fn prime_field_axioms(a in gf29(), b in gf29(), c in gf29()) {
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a - a, a.zero_like());
        if !Ring::is_zero(&a) {
            prop_assert_eq!(a * a.inv().unwrap(), a.one_like());
        }
    }

    #[test]
    fn reduction_is_a_ring_homomorphism(a in cyclo7(), b in cyclo7(), root in prop::sample::select(vec![7u64, 16, 20])) {
        let r = PrimeField::new(29).unwrap().elem(root as i64);
        let map = |x: &CyclotomicNumber| x.reduce_mod_p(&r).unwrap();
        prop_assert_eq!(map(&(a.clone() * b.clone())), map(&a) * map(&b));
        prop_assert_eq!(map(&(a.clone() + b.clone())), map(&a) + map(&b));
    }

    #[test]
    fn conjugation_is_multiplicative(a in cyclo7(), b in cyclo7()) {
        prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
    }
}

#[test]
fn product_of_cyclotomic_polynomials() {
    for n in 1..=60u32 {
        let mut acc = IntPolynomial::from_i64(&[1]);
        for d in (1..=n).filter(|d| n % d == 0) {
            acc = acc.mul(&cyclotomic_polynomial(d));
        }
        assert_eq!(acc, IntPolynomial::x_pow_minus_one(n as usize), "n = {n}");
        let (_, r) = IntPolynomial::x_pow_minus_one(n as usize).div_rem_monic(&cyclotomic_polynomial(n));
        assert!(r.coeffs().iter().all(|c| c == &BigInt::from(0)));
    }
}
