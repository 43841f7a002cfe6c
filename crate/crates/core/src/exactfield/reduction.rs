use super::{CyclotomicNumber, FieldError, PrimeField, PrimeFieldElement, Rational};

/// Target of a reduction map into GF(p), with the image of ζ_n when the
/// source is cyclotomic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub field: PrimeField,
    pub root: Option<PrimeFieldElement>,
}

impl Reduction {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        Ok(Reduction {
            field: PrimeField::new(p)?,
            root: None,
        })
    }

    /// Sends ζ_n to the smallest element of exact order `n`.
    pub fn with_root_of_order(p: u64, n: u64) -> Result<Self, FieldError> {
        Ok(Reduction {
            field: PrimeField::new(p)?,
            root: Some(super::find_root_of_unity(p, n)?),
        })
    }

    pub fn with_root(root: PrimeFieldElement) -> Self {
        Reduction {
            field: root.field(),
            root: Some(root),
        }
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }
}

/// Field elements with a reduction map into GF(p).
pub trait ReduceModP {
    fn reduce(&self, r: &Reduction) -> Result<PrimeFieldElement, FieldError>;
}

impl ReduceModP for Rational {
    fn reduce(&self, r: &Reduction) -> Result<PrimeFieldElement, FieldError> {
        r.field.from_rational(self)
    }
}

impl ReduceModP for PrimeFieldElement {
    fn reduce(&self, r: &Reduction) -> Result<PrimeFieldElement, FieldError> {
        if self.modulus() != r.p() {
            return Err(FieldError::ModulusMismatch {
                expected: r.p(),
                got: self.modulus(),
            });
        }
        Ok(*self)
    }
}

impl ReduceModP for CyclotomicNumber {
    fn reduce(&self, r: &Reduction) -> Result<PrimeFieldElement, FieldError> {
        if self.is_rational() {
            return r.field.from_rational(&self.coeffs()[0]);
        }
        let root = r.root.ok_or(FieldError::NoRoot {
            p: r.p(),
            n: self.conductor() as u64,
        })?;
        self.reduce_mod_p(&root)
    }
}
