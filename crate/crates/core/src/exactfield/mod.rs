//! Exact coefficient fields: Q, Q(ζ_n), GF(p), and the small extension fields
//! GF(p^k) used as index alphabets.

mod cyclotomic;
mod descriptor;
mod extension;
mod prime;
mod rational;
mod reduction;
mod traits;

use thiserror::Error;

pub use cyclotomic::{
    check_root_order, cyclotomic_polynomial, euler_phi, find_root_of_unity, working_prime,
    CyclotomicField, CyclotomicNumber, IntPolynomial,
};
pub use descriptor::{FieldDescriptor, JsonCoeff};
pub use extension::{ExtensionElement, ExtensionField, MAX_EXTENSION_DEGREE};
pub use prime::{
    inv_mod, is_prime, mul_mod, pow_mod, prime_factors, PrimeField, PrimeFieldElement, MAX_PRIME,
};
pub use rational::{as_nonnegative_integer, format_rational, int, parse_rational, rational, Rational};
pub use reduction::{ReduceModP, Reduction};
pub use traits::{Field, Ring};

/// Alias used where the index-alphabet role matters.
pub type SmallFieldIndex = ExtensionElement;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("cannot parse {0:?} as a field element")]
    Parse(String),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("denominator {denominator} is not invertible mod {p}")]
    NonInvertibleDenominator { p: u64, denominator: String },
    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u32, right: u32 },
    #[error("{root} does not have exact multiplicative order {n} mod {p}")]
    BadRootOrder { root: u64, n: u64, p: u64 },
    #[error("GF({p}) has no primitive {n}-th root of unity")]
    NoRoot { p: u64, n: u64 },
    #[error("conductor {0} outside 1..=10000")]
    InvalidConductor(u32),
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientLength { expected: usize, got: usize },
    #[error("extension degree {0} is not supported")]
    UnsupportedDegree(usize),
    #[error("modulus is reducible")]
    Reducible,
    #[error("element of GF({got}) used where GF({expected}) was expected")]
    ModulusMismatch { expected: u64, got: u64 },
}

#[cfg(test)]
mod proptests;
