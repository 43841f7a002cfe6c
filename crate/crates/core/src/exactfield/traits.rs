use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use super::Rational;

/// A commutative ring whose elements carry whatever runtime context they need
/// (conductor, modulus, number of variables), so that neutral elements can be
/// produced from any existing element.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64_like(&self, n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

/// Exact field with an explicit context type.
pub trait Field: Ring + Eq + Hash + Display {
    type Context: Clone + Debug + PartialEq + Send + Sync;

    fn context(&self) -> Self::Context;
    fn zero(ctx: &Self::Context) -> Self;
    fn one(ctx: &Self::Context) -> Self;
    fn from_i64(ctx: &Self::Context, n: i64) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn characteristic(&self) -> u64;

    /// Complex conjugation where the field has one (ζ ↦ ζ⁻¹ on cyclotomic
    /// fields); the identity elsewhere.
    fn conj(&self) -> Self {
        self.clone()
    }

    /// The value as a rational number, if it lies in the prime subfield of a
    /// characteristic-zero field.
    fn to_rational(&self) -> Option<Rational> {
        None
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|inv| self.clone() * inv)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}
