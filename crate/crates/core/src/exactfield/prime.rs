use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::{Field, FieldError, Rational, Ring};

/// Upper bound (exclusive) on supported primes: products of two residues fit
/// in a `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn elem(&self, v: i64) -> PrimeFieldElement {
        let p = self.p as i64;
        PrimeFieldElement {
            value: v.rem_euclid(p) as u32,
            modulus: self.p,
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> PrimeFieldElement {
        let r = v.mod_floor(&BigInt::from(self.p));
        PrimeFieldElement {
            value: r.to_u32().expect("residue below modulus"),
            modulus: self.p,
        }
    }

    /// Reduces a rational number; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &Rational) -> Result<PrimeFieldElement, FieldError> {
        let den = self.from_bigint(q.denom());
        let inv = den.inv().ok_or(FieldError::NonInvertibleDenominator {
            p: self.p(),
            denominator: q.denom().abs().to_string(),
        })?;
        Ok(self.from_bigint(q.numer()) * inv)
    }

    pub fn zero(&self) -> PrimeFieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> PrimeFieldElement {
        self.elem(1)
    }

    /// All elements `0, 1, …, p−1`.
    pub fn elements(&self) -> impl Iterator<Item = PrimeFieldElement> {
        let p = self.p;
        (0..p).map(move |v| PrimeFieldElement { value: v, modulus: p })
    }

    /// Smallest quadratic non-residue (p odd).
    pub fn non_residue(&self) -> PrimeFieldElement {
        let half = (self.p() - 1) / 2;
        self.elements()
            .skip(2)
            .find(|a| a.pow(half).value() == self.p() - 1)
            .expect("odd prime has a non-residue")
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue by Fermat.
#[inline]
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Element of GF(p), `value < modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    value: u32,
    modulus: u32,
}

impl PrimeFieldElement {
    pub fn value(&self) -> u64 {
        self.value as u64
    }

    pub fn modulus(&self) -> u64 {
        self.modulus as u64
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    /// Exact multiplicative order, `None` for zero.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.value == 0 {
            return None;
        }
        let p = self.modulus();
        let mut n = p - 1;
        for q in prime_factors(p - 1) {
            while n % q == 0 && pow_mod(self.value(), n / q, p) == 1 {
                n /= q;
            }
        }
        Some(n)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "mixed prime fields");
    }
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for PrimeFieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        let s = self.value as u64 + rhs.value as u64;
        let m = self.modulus as u64;
        PrimeFieldElement {
            value: if s >= m { s - m } else { s } as u32,
            modulus: self.modulus,
        }
    }
}

impl Sub for PrimeFieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for PrimeFieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        PrimeFieldElement {
            value: if self.value == 0 { 0 } else { self.modulus - self.value },
            modulus: self.modulus,
        }
    }
}

impl Mul for PrimeFieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        PrimeFieldElement {
            value: mul_mod(self.value(), rhs.value(), self.modulus()) as u32,
            modulus: self.modulus,
        }
    }
}

impl Ring for PrimeFieldElement {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn from_i64_like(&self, n: i64) -> Self {
        self.field().elem(n)
    }
}

impl Field for PrimeFieldElement {
    type Context = PrimeField;

    fn context(&self) -> PrimeField {
        self.field()
    }
    fn zero(ctx: &PrimeField) -> Self {
        ctx.zero()
    }
    fn one(ctx: &PrimeField) -> Self {
        ctx.one()
    }
    fn from_i64(ctx: &PrimeField, n: i64) -> Self {
        ctx.elem(n)
    }
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(PrimeFieldElement {
                value: inv_mod(self.value(), self.modulus()) as u32,
                modulus: self.modulus,
            })
        }
    }
    fn characteristic(&self) -> u64 {
        self.modulus()
    }
    fn pow(&self, e: u64) -> Self {
        PrimeFieldElement {
            value: pow_mod(self.value(), e, self.modulus()) as u32,
            modulus: self.modulus,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rational;

    #[test]
    fn rejects_composites_and_large_primes() {
        assert!(PrimeField::new(29).is_ok());
        assert!(matches!(PrimeField::new(91), Err(FieldError::NotPrime(91))));
        assert!(PrimeField::new(2_147_483_659).is_err());
        assert!(PrimeField::new(2_147_483_647).is_ok());
    }

    #[test]
    fn three_halves_mod_29() {
        let f = PrimeField::new(29).unwrap();
        assert_eq!(f.from_rational(&rational(3, 2)).unwrap().value(), 16);
        assert!(f.from_rational(&rational(1, 58)).is_err());
    }

    #[test]
    fn orders() {
        let f = PrimeField::new(29).unwrap();
        assert_eq!(f.elem(16).multiplicative_order(), Some(7));
        assert_eq!(f.elem(1).multiplicative_order(), Some(1));
        assert_eq!(f.elem(-1).multiplicative_order(), Some(2));
        assert_eq!(f.non_residue().value(), 2);
    }

    #[test]
    fn large_prime_products_do_not_overflow() {
        let f = PrimeField::new(2_147_483_647).unwrap();
        let a = f.elem(-1);
        assert_eq!((a * a).value(), 1);
    }
}
