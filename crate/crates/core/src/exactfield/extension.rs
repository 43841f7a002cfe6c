use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::prime::{inv_mod, mul_mod};
use super::{Field, FieldError, PrimeField, PrimeFieldElement, Ring};

/// Largest supported extension degree.
pub const MAX_EXTENSION_DEGREE: usize = 3;

/// GF(p^k) = GF(p)[t]/(m(t)) for a monic irreducible `m` of degree `k ≤ 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionField {
    p: u64,
    k: usize,
    /// Low coefficients of the monic modulus, `m = t^k + Σ modulus[i] t^i`.
    modulus: [u64; MAX_EXTENSION_DEGREE],
}

fn has_root(p: u64, low: &[u64]) -> bool {
    let k = low.len();
    (0..p).any(|x| {
        let mut acc = 1u64;
        for i in (0..k).rev() {
            acc = (mul_mod(acc, x, p) + low[i]) % p;
        }
        acc == 0
    })
}

impl ExtensionField {
    /// Uses the smallest irreducible modulus, comparing coefficient vectors
    /// from the `t^{k-1}` coefficient down.
    pub fn new(p: u64, k: usize) -> Result<Self, FieldError> {
        PrimeField::new(p)?;
        if k == 0 || k > MAX_EXTENSION_DEGREE {
            return Err(FieldError::UnsupportedDegree(k));
        }
        if k == 1 {
            return Ok(ExtensionField { p, k, modulus: [0; 3] });
        }
        let total = p.pow(k as u32);
        for code in 0..total {
            // digits of `code` from the top are the coefficients of t^{k-1} .. t^0
            let mut low = [0u64; 3];
            let mut c = code;
            for i in 0..k {
                low[i] = c % p;
                c /= p;
            }
            // degree 2 and 3: irreducible iff no root
            if !has_root(p, &low[..k]) {
                return Ok(ExtensionField { p, k, modulus: low });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// Explicit modulus given by its low coefficients.
    pub fn with_modulus(p: u64, low: &[u64]) -> Result<Self, FieldError> {
        PrimeField::new(p)?;
        let k = low.len();
        if k == 0 || k > MAX_EXTENSION_DEGREE {
            return Err(FieldError::UnsupportedDegree(k));
        }
        let mut m = [0u64; 3];
        for (i, &c) in low.iter().enumerate() {
            m[i] = c % p;
        }
        if k > 1 && has_root(p, &m[..k]) {
            return Err(FieldError::Reducible);
        }
        Ok(ExtensionField { p, k, modulus: m })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    pub fn modulus_low(&self) -> &[u64] {
        &self.modulus[..self.k]
    }

    pub fn zero(&self) -> ExtensionElement {
        ExtensionElement { field: *self, c: [0; 3] }
    }

    pub fn one(&self) -> ExtensionElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> ExtensionElement {
        let mut c = [0; 3];
        c[0] = v % self.p;
        ExtensionElement { field: *self, c }
    }

    pub fn from_i64(&self, v: i64) -> ExtensionElement {
        self.from_u64(v.rem_euclid(self.p as i64) as u64)
    }

    pub fn embed(&self, a: PrimeFieldElement) -> ExtensionElement {
        assert_eq!(a.modulus(), self.p, "characteristic mismatch");
        self.from_u64(a.value())
    }

    /// The class of `t`.
    pub fn generator(&self) -> ExtensionElement {
        if self.k == 1 {
            return self.from_u64((self.p - self.modulus[0]) % self.p);
        }
        let mut c = [0; 3];
        c[1] = 1;
        ExtensionElement { field: *self, c }
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> ExtensionElement {
        assert!(coeffs.len() <= self.k);
        let mut c = [0; 3];
        for (i, &v) in coeffs.iter().enumerate() {
            c[i] = v % self.p;
        }
        ExtensionElement { field: *self, c }
    }

    /// Element with base-p digit expansion `index = Σ c_i p^i`.
    pub fn element(&self, index: u64) -> ExtensionElement {
        assert!(index < self.order());
        let mut c = [0; 3];
        let mut r = index;
        for slot in c.iter_mut().take(self.k) {
            *slot = r % self.p;
            r /= self.p;
        }
        ExtensionElement { field: *self, c }
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtensionElement> {
        let f = *self;
        (0..f.order()).map(move |i| f.element(i))
    }

    /// Smallest-index generator of the multiplicative group.
    pub fn primitive_element(&self) -> ExtensionElement {
        let q1 = self.order() - 1;
        let factors = super::prime_factors(q1);
        self.elements()
            .skip(1)
            .find(|a| factors.iter().all(|&r| !a.pow(q1 / r).is_one()))
            .expect("multiplicative group is cyclic")
    }
}

/// Element of an [`ExtensionField`].
#[derive(Clone, Copy)]
pub struct ExtensionElement {
    field: ExtensionField,
    c: [u64; 3],
}

impl ExtensionElement {
    pub fn field(&self) -> ExtensionField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c[..self.field.k]
    }

    pub fn index(&self) -> u64 {
        let p = self.field.p;
        self.coeffs().iter().rev().fold(0, |acc, &d| acc * p + d)
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self) -> Self {
        self.pow(self.field.p)
    }

    /// Absolute trace to GF(p).
    pub fn trace(&self) -> PrimeFieldElement {
        let gf = PrimeField::new(self.field.p).expect("prime");
        let mut acc = *self;
        let mut x = *self;
        for _ in 1..self.field.k {
            x = x.frobenius();
            acc = acc + x;
        }
        debug_assert!(acc.c[1..].iter().all(|&d| d == 0));
        gf.elem(acc.c[0] as i64)
    }

    /// Absolute norm to GF(p).
    pub fn norm(&self) -> PrimeFieldElement {
        let gf = PrimeField::new(self.field.p).expect("prime");
        let mut acc = *self;
        let mut x = *self;
        for _ in 1..self.field.k {
            x = x.frobenius();
            acc = acc * x;
        }
        gf.elem(acc.c[0] as i64)
    }

    /// `Some` when the element lies in the prime field.
    pub fn to_prime(&self) -> Option<PrimeFieldElement> {
        if self.c[1..].iter().any(|&d| d != 0) {
            return None;
        }
        Some(PrimeField::new(self.field.p).expect("prime").elem(self.c[0] as i64))
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.field, other.field, "extension field mismatch");
    }
}

impl PartialEq for ExtensionElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.c == other.c
    }
}

impl Eq for ExtensionElement {}

impl Hash for ExtensionElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.p.hash(state);
        self.c.hash(state);
    }
}

impl fmt::Debug for ExtensionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExtensionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &d) in self.coeffs().iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            parts.push(match (i, d) {
                (0, _) => d.to_string(),
                (1, 1) => "t".to_string(),
                (1, _) => format!("{d}*t"),
                (_, 1) => format!("t^{i}"),
                _ => format!("{d}*t^{i}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Add for ExtensionElement {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.check(&rhs);
        let p = self.field.p;
        for i in 0..3 {
            self.c[i] = (self.c[i] + rhs.c[i]) % p;
        }
        self
    }
}

impl Neg for ExtensionElement {
    type Output = Self;
    fn neg(mut self) -> Self {
        let p = self.field.p;
        for d in &mut self.c {
            *d = (p - *d) % p;
        }
        self
    }
}

impl Sub for ExtensionElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for ExtensionElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        let f = self.field;
        let (p, k) = (f.p, f.k);
        if k == 1 {
            return f.from_u64(mul_mod(self.c[0], rhs.c[0], p));
        }
        let mut raw = [0u64; 5];
        for i in 0..k {
            if self.c[i] == 0 {
                continue;
            }
            for j in 0..k {
                raw[i + j] = (raw[i + j] + mul_mod(self.c[i], rhs.c[j], p)) % p;
            }
        }
        for top in (k..2 * k - 1).rev() {
            let c = raw[top];
            if c == 0 {
                continue;
            }
            raw[top] = 0;
            for i in 0..k {
                let sub = mul_mod(c, f.modulus[i], p);
                raw[top - k + i] = (raw[top - k + i] + p - sub) % p;
            }
        }
        let mut out = [0; 3];
        out[..k].copy_from_slice(&raw[..k]);
        ExtensionElement { field: f, c: out }
    }
}

impl Ring for ExtensionElement {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|&d| d == 0)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        self.field.from_i64(n)
    }
}

impl Field for ExtensionElement {
    type Context = ExtensionField;

    fn context(&self) -> ExtensionField {
        self.field
    }
    fn zero(ctx: &ExtensionField) -> Self {
        ctx.zero()
    }
    fn one(ctx: &ExtensionField) -> Self {
        ctx.one()
    }
    fn from_i64(ctx: &ExtensionField, n: i64) -> Self {
        ctx.from_i64(n)
    }
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        if self.field.k == 1 {
            return Some(self.field.from_u64(inv_mod(self.c[0], self.field.p)));
        }
        Some(self.pow(self.field.order() - 2))
    }
    fn characteristic(&self) -> u64 {
        self.field.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli() {
        assert_eq!(ExtensionField::new(2, 3).unwrap().modulus_low(), &[1, 1, 0]);
        assert_eq!(ExtensionField::new(3, 2).unwrap().modulus_low(), &[1, 0]);
        assert_eq!(ExtensionField::new(29, 2).unwrap().order(), 841);
        assert!(matches!(ExtensionField::new(2, 4), Err(FieldError::UnsupportedDegree(4))));
        assert!(matches!(ExtensionField::with_modulus(3, &[2, 0]), Err(FieldError::Reducible)));
    }

    #[test]
    fn f8_arithmetic() {
        let f = ExtensionField::new(2, 3).unwrap();
        let t = f.generator();
        // t^3 = t + 1
        assert_eq!(t.pow(3), t + f.one());
        assert_eq!(t.pow(7), f.one());
        for a in f.elements().skip(1) {
            assert_eq!(a * a.inv().unwrap(), f.one());
        }
        // Tr(x) = x + x^2 + x^4; exactly four elements have trace zero
        assert_eq!(f.elements().filter(|a| a.trace().value() == 0).count(), 4);
    }

    #[test]
    fn indices_round_trip() {
        let f = ExtensionField::new(3, 2).unwrap();
        for i in 0..9 {
            assert_eq!(f.element(i).index(), i);
        }
        assert_eq!(f.generator().pow(2), -f.one());
    }

    #[test]
    fn gf_p_squared_contains_square_roots() {
        let f = ExtensionField::new(29, 2).unwrap();
        let g = f.primitive_element();
        assert_eq!(g.pow(840), f.one());
        assert_ne!(g.pow(420), f.one());
        for a in 0..29u64 {
            let x = f.from_u64(a);
            assert!(f.elements().any(|y| y * y == x));
        }
    }

    #[test]
    fn norm_is_multiplicative() {
        let f = ExtensionField::new(5, 3).unwrap();
        let a = f.from_coeffs(&[1, 2, 3]);
        let b = f.from_coeffs(&[4, 0, 1]);
        assert_eq!((a * b).norm(), a.norm() * b.norm());
    }
}
