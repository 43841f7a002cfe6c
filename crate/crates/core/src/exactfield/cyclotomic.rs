use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::prime::prime_factors;
use super::{format_rational, Field, FieldError, PrimeField, PrimeFieldElement, Rational, Ring};
use crate::linalg::Matrix;

fn qzero() -> Rational {
    Rational::from_integer(BigInt::from(0))
}

fn qone() -> Rational {
    Rational::from_integer(BigInt::from(1))
}

fn bigint_is_zero(c: &BigInt) -> bool {
    c.sign() == num_bigint::Sign::NoSign
}

/// Dense univariate polynomial with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.sign() == num_bigint::Sign::NoSign) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^n − 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::from(0); n + 1];
        c[0] = BigInt::from(-1);
        c[n] = BigInt::from(1);
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c == &BigInt::from(1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(vec![]);
        }
        let mut out = vec![BigInt::from(0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if bigint_is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= d {
            return (Self::new(vec![]), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::from(0); rem.len() - d];
        for k in (d..rem.len()).rev() {
            let c = std::mem::take(&mut rem[k]);
            if bigint_is_zero(&c) {
                continue;
            }
            for i in 0..d {
                rem[k - d + i] -= &c * &divisor.coeffs[i];
            }
            quot[k - d] = c;
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if bigint_is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = abs != BigInt::from(1) || k == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn phi_cache() -> &'static Mutex<HashMap<u32, IntPolynomial>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, IntPolynomial>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Φ_n, obtained by dividing `x^n − 1` exactly by Φ_d for every proper
/// divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: u32) -> IntPolynomial {
    assert!((1..=10_000).contains(&n), "conductor out of range: {n}");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut acc = IntPolynomial::x_pow_minus_one(n as usize);
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let (q, r) = acc.div_rem_monic(&cyclotomic_polynomial(d));
        debug_assert!(r.coeffs.is_empty(), "inexact division by Φ_{d}");
        acc = q;
    }
    phi_cache().lock().unwrap().insert(n, acc.clone());
    acc
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    let mut r = n as u64;
    for q in prime_factors(n as u64) {
        r = r / q * (q - 1);
    }
    r as usize
}

struct CycloInner {
    conductor: u32,
    modulus: Vec<BigInt>,
}

/// The field Q(ζ_n) = Q[x]/Φ_n. Cheap to clone.
#[derive(Clone)]
pub struct CyclotomicField(Arc<CycloInner>);

impl CyclotomicField {
    pub fn new(conductor: u32) -> Result<Self, FieldError> {
        static FIELDS: OnceLock<Mutex<HashMap<u32, CyclotomicField>>> = OnceLock::new();
        if !(1..=10_000).contains(&conductor) {
            return Err(FieldError::InvalidConductor(conductor));
        }
        let fields = FIELDS.get_or_init(Default::default);
        if let Some(f) = fields.lock().unwrap().get(&conductor) {
            return Ok(f.clone());
        }
        let phi = cyclotomic_polynomial(conductor);
        let field = CyclotomicField(Arc::new(CycloInner {
            conductor,
            modulus: phi.coeffs().to_vec(),
        }));
        fields.lock().unwrap().insert(conductor, field.clone());
        Ok(field)
    }

    pub fn conductor(&self) -> u32 {
        self.0.conductor
    }

    /// φ(n), the dimension over Q.
    pub fn degree(&self) -> usize {
        self.0.modulus.len() - 1
    }

    pub fn zero(&self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.clone(),
            coeffs: vec![qzero(); self.degree()],
        }
    }

    pub fn one(&self) -> CyclotomicNumber {
        self.from_rational(qone())
    }

    pub fn from_rational(&self, q: Rational) -> CyclotomicNumber {
        let mut z = self.zero();
        z.coeffs[0] = q;
        z
    }

    pub fn from_i64(&self, n: i64) -> CyclotomicNumber {
        self.from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_coeffs(&self, coeffs: Vec<Rational>) -> Result<CyclotomicNumber, FieldError> {
        if coeffs.len() != self.degree() {
            return Err(FieldError::CoefficientLength {
                expected: self.degree(),
                got: coeffs.len(),
            });
        }
        Ok(CyclotomicNumber {
            field: self.clone(),
            coeffs,
        })
    }

    /// ζ_n^k for any integer k.
    pub fn zeta_pow(&self, k: i64) -> CyclotomicNumber {
        let n = self.conductor() as i64;
        let k = k.rem_euclid(n) as usize;
        let mut raw = vec![qzero(); k + 1];
        raw[k] = qone();
        self.reduce(raw)
    }

    pub fn zeta(&self) -> CyclotomicNumber {
        self.zeta_pow(1)
    }

    fn reduce(&self, mut raw: Vec<Rational>) -> CyclotomicNumber {
        let d = self.degree();
        let m = &self.0.modulus;
        for k in (d..raw.len()).rev() {
            let c = std::mem::take(&mut raw[k]);
            if c.is_zero() {
                continue;
            }
            for i in 0..d {
                if !bigint_is_zero(&m[i]) {
                    raw[k - d + i] -= &c * Rational::from_integer(m[i].clone());
                }
            }
        }
        raw.resize(d, qzero());
        CyclotomicNumber {
            field: self.clone(),
            coeffs: raw,
        }
    }
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.conductor() == other.conductor()
    }
}

impl Eq for CyclotomicField {}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.conductor())
    }
}

/// Element of Q(ζ_n) in the power basis `1, ζ, …, ζ^{φ(n)−1}`.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: CyclotomicField,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if self.conductor() != other.conductor() {
            return Err(FieldError::ConductorMismatch {
                left: self.conductor(),
                right: other.conductor(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        let d = self.coeffs.len();
        let mut raw = vec![qzero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Ok(self.field.reduce(raw))
    }

    /// The ring homomorphism Q(ζ_n) → GF(p) sending ζ_n to `root_image`.
    pub fn reduce_mod_p(&self, root_image: &PrimeFieldElement) -> Result<PrimeFieldElement, FieldError> {
        let n = self.conductor() as u64;
        check_root_order(root_image, n)?;
        let gf = root_image.field();
        let mut acc = gf.zero();
        let mut power = gf.one();
        for c in &self.coeffs {
            if !c.is_zero() {
                acc = acc + gf.from_rational(c)? * power;
            }
            power = power * *root_image;
        }
        Ok(acc)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }
}

/// Accepts `root` only if its multiplicative order is exactly `n`.
pub fn check_root_order(root: &PrimeFieldElement, n: u64) -> Result<(), FieldError> {
    if root.multiplicative_order() != Some(n) {
        return Err(FieldError::BadRootOrder {
            root: root.value(),
            n,
            p: root.modulus(),
        });
    }
    Ok(())
}

/// The smallest element of GF(p)^× of exact order `n`.
pub fn find_root_of_unity(p: u64, n: u64) -> Result<PrimeFieldElement, FieldError> {
    let gf = PrimeField::new(p)?;
    if n == 0 || (p - 1) % n != 0 {
        return Err(FieldError::NoRoot { p, n });
    }
    gf.elements()
        .skip(1)
        .find(|a| a.multiplicative_order() == Some(n))
        .ok_or(FieldError::NoRoot { p, n })
}

/// Smallest prime `p ≥ lower` with `p ≡ 1 (mod n)` satisfying `extra`.
pub fn working_prime(n: u64, lower: u64, extra: impl Fn(u64) -> bool) -> u64 {
    (lower.max(2)..)
        .find(|&p| super::is_prime(p) && (p - 1) % n == 0 && extra(p))
        .expect("infinitely many primes")
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.conductor() == other.conductor() && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl Hash for CyclotomicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.conductor().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.conductor();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let abs_s = format_rational(&abs);
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs_s}")?,
                (1, true) => write!(f, "z{n}")?,
                (1, false) => write!(f, "{abs_s}*z{n}")?,
                (_, true) => write!(f, "z{n}^{k}")?,
                (_, false) => write!(f, "{abs_s}*z{n}^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for CyclotomicNumber {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("conductor mismatch")
    }
}

impl Sub for CyclotomicNumber {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for CyclotomicNumber {
    type Output = Self;
    fn neg(mut self) -> Self {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul for CyclotomicNumber {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("conductor mismatch")
    }
}

impl Ring for CyclotomicNumber {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn from_i64_like(&self, n: i64) -> Self {
        self.field.from_i64(n)
    }
}

impl Field for CyclotomicNumber {
    type Context = CyclotomicField;

    fn context(&self) -> CyclotomicField {
        self.field.clone()
    }
    fn zero(ctx: &CyclotomicField) -> Self {
        ctx.zero()
    }
    fn one(ctx: &CyclotomicField) -> Self {
        ctx.one()
    }
    fn from_i64(ctx: &CyclotomicField, n: i64) -> Self {
        ctx.from_i64(n)
    }

    /// Solves `self · y = 1` through the multiplication-by-`self` matrix over Q.
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        if self.is_rational() {
            return Some(self.field.from_rational(self.coeffs[0].recip()));
        }
        let d = self.coeffs.len();
        let mut m = Matrix::zeros(d, d, &qzero());
        for j in 0..d {
            let col = self.clone() * self.field.zeta_pow(j as i64);
            for i in 0..d {
                m[(i, j)] = col.coeffs[i].clone();
            }
        }
        let mut rhs = vec![qzero(); d];
        rhs[0] = qone();
        let y = m.solve(&rhs)?;
        Some(CyclotomicNumber {
            field: self.field.clone(),
            coeffs: y,
        })
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn conj(&self) -> Self {
        let n = self.conductor() as usize;
        let mut raw = vec![qzero(); n.max(1)];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(n - k) % n] += c;
            }
        }
        self.field.reduce(raw)
    }

    fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }
}

impl CyclotomicNumber {
    /// Integer value when the number is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        let q = self.to_rational()?;
        q.is_integer().then(|| q.to_integer())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom() == &BigInt::from(1))
    }

    pub fn denominators_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{int, rational};

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(7), IntPolynomial::from_i64(&[1; 7]));
        assert_eq!(cyclotomic_polynomial(6).to_string(), "x^2 - x + 1");
        assert_eq!(cyclotomic_polynomial(12).to_string(), "x^4 - x^2 + 1");
    }

    #[test]
    fn totient_matches_degree() {
        for n in 1..200 {
            assert_eq!(cyclotomic_polynomial(n).degree(), Some(euler_phi(n)), "n = {n}");
        }
    }

    #[test]
    fn zeta7_cube_times_fourth_is_one() {
        let k = CyclotomicField::new(7).unwrap();
        assert_eq!(k.zeta_pow(3) * k.zeta_pow(4), k.one());
        assert_eq!(k.zeta_pow(-1), k.zeta_pow(6));
    }

    #[test]
    fn zeta6_squared() {
        let k = CyclotomicField::new(6).unwrap();
        let z = k.zeta();
        let expected = k.from_coeffs(vec![int(-1), int(1)]).unwrap();
        assert_eq!(z.clone() * z, expected);
    }

    #[test]
    fn mismatched_conductors() {
        let a = CyclotomicField::new(7).unwrap().one();
        let b = CyclotomicField::new(5).unwrap().one();
        assert!(matches!(
            a.checked_mul(&b),
            Err(FieldError::ConductorMismatch { left: 7, right: 5 })
        ));
    }

    #[test]
    fn inverse_and_conjugate() {
        let k = CyclotomicField::new(7).unwrap();
        let a = k.from_i64(2) + k.zeta() - k.zeta_pow(3) * k.from_rational(rational(1, 3));
        let ai = a.inv().unwrap();
        assert_eq!(a.clone() * ai, k.one());
        assert_eq!(k.zeta().conj(), k.zeta_pow(6));
        assert_eq!(a.conj().conj(), a);
        assert!(k.zero().inv().is_none());
    }

    #[test]
    fn reductions() {
        let k = CyclotomicField::new(7).unwrap();
        let gf = PrimeField::new(29).unwrap();
        let r = gf.elem(16);
        assert_eq!(k.zeta().reduce_mod_p(&r).unwrap().value(), 16);
        let total = (0..7).fold(k.zero(), |acc, j| acc + k.zeta_pow(j));
        assert!(Ring::is_zero(&total));
        assert_eq!(total.reduce_mod_p(&r).unwrap().value(), 0);
        let three_halves = k.from_rational(rational(3, 2));
        assert_eq!(three_halves.reduce_mod_p(&r).unwrap().value(), 16);
        assert!(matches!(
            k.zeta().reduce_mod_p(&gf.elem(1)),
            Err(FieldError::BadRootOrder { .. })
        ));
        // 28 has order 2 in GF(29)
        assert!(k.zeta().reduce_mod_p(&gf.elem(28)).is_err());
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(find_root_of_unity(29, 7).unwrap().value(), 7);
        assert_eq!(find_root_of_unity(29, 1).unwrap().value(), 1);
        assert!(matches!(find_root_of_unity(13, 7), Err(FieldError::NoRoot { p: 13, n: 7 })));
        assert_eq!(find_root_of_unity(43, 7).unwrap().value(), 4);
    }

    #[test]
    fn default_working_primes() {
        assert_eq!(working_prime(7, 23, |_| true), 29);
        assert_eq!(working_prime(7, 30, |_| true), 43);
        assert_eq!(working_prime(3, 23, |_| true), 31);
        assert_eq!(working_prime(4, 23, |_| true), 29);
    }
}
