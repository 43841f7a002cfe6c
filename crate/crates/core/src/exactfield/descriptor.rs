use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use super::{
    format_rational, parse_rational, CyclotomicField, CyclotomicNumber, Field, FieldError,
    PrimeField, PrimeFieldElement, Rational,
};

/// Names a coefficient field in input and output files.
///
/// Accepted spellings:
/// `{"field":"cyclotomic","conductor":7}`, `{"cyclotomic":7}`,
/// `{"field":"prime","p":29}`, `{"prime":29}`, `{"field":"rational"}`, `"rational"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rational,
    Prime { p: u64 },
    Cyclotomic { conductor: u32 },
}

impl FieldDescriptor {
    pub fn to_json(&self) -> Value {
        match self {
            FieldDescriptor::Rational => json!({"field": "rational"}),
            FieldDescriptor::Prime { p } => json!({"field": "prime", "p": p}),
            FieldDescriptor::Cyclotomic { conductor } => {
                json!({"field": "cyclotomic", "conductor": conductor})
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self, FieldError> {
        let bad = || FieldError::Parse(format!("unrecognized field descriptor {v}"));
        let as_u64 = |x: &Value| x.as_u64().ok_or_else(bad);
        match v {
            Value::String(s) if matches!(s.as_str(), "rational" | "Q") => Ok(FieldDescriptor::Rational),
            Value::Object(map) => {
                if let Some(kind) = map.get("field") {
                    match kind.as_str().ok_or_else(bad)? {
                        "rational" => Ok(FieldDescriptor::Rational),
                        "prime" => {
                            let p = as_u64(map.get("p").ok_or_else(bad)?)?;
                            Ok(FieldDescriptor::Prime { p })
                        }
                        "cyclotomic" => {
                            let n = as_u64(map.get("conductor").ok_or_else(bad)?)?;
                            Ok(FieldDescriptor::Cyclotomic { conductor: n as u32 })
                        }
                        _ => Err(bad()),
                    }
                } else if let Some(n) = map.get("cyclotomic") {
                    Ok(FieldDescriptor::Cyclotomic { conductor: as_u64(n)? as u32 })
                } else if let Some(p) = map.get("prime") {
                    Ok(FieldDescriptor::Prime { p: as_u64(p)? })
                } else if map.contains_key("rational") {
                    Ok(FieldDescriptor::Rational)
                } else {
                    Err(bad())
                }
            }
            _ => Err(bad()),
        }
    }

    /// Rejects descriptors naming a non-prime or an out-of-range conductor.
    pub fn validate(&self) -> Result<(), FieldError> {
        match *self {
            FieldDescriptor::Rational => Ok(()),
            FieldDescriptor::Prime { p } => PrimeField::new(p).map(|_| ()),
            FieldDescriptor::Cyclotomic { conductor } => CyclotomicField::new(conductor).map(|_| ()),
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "Q"),
            FieldDescriptor::Prime { p } => write!(f, "GF({p})"),
            FieldDescriptor::Cyclotomic { conductor } => write!(f, "Q(zeta_{conductor})"),
        }
    }
}

impl Serialize for FieldDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        FieldDescriptor::from_json(&v).map_err(D::Error::custom)
    }
}

/// Field elements that can be written to and read from JSON files.
pub trait JsonCoeff: Field {
    fn to_json(&self) -> Value;
    fn from_json(ctx: &Self::Context, v: &Value) -> Result<Self, FieldError>;
    fn descriptor(ctx: &Self::Context) -> FieldDescriptor;
}

fn rational_from_json(v: &Value) -> Result<Rational, FieldError> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| FieldError::Parse(n.to_string())),
        _ => Err(FieldError::Parse(v.to_string())),
    }
}

impl JsonCoeff for Rational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }
    fn from_json(_: &(), v: &Value) -> Result<Self, FieldError> {
        rational_from_json(v)
    }
    fn descriptor(_: &()) -> FieldDescriptor {
        FieldDescriptor::Rational
    }
}

impl JsonCoeff for PrimeFieldElement {
    fn to_json(&self) -> Value {
        Value::from(self.value())
    }
    fn from_json(ctx: &PrimeField, v: &Value) -> Result<Self, FieldError> {
        ctx.from_rational(&rational_from_json(v)?)
    }
    fn descriptor(ctx: &PrimeField) -> FieldDescriptor {
        FieldDescriptor::Prime { p: ctx.p() }
    }
}

impl JsonCoeff for CyclotomicNumber {
    /// Array of `"num/den"` strings in the power basis.
    fn to_json(&self) -> Value {
        Value::Array(self.coeffs().iter().map(|c| Value::String(format_rational(c))).collect())
    }
    /// Accepts a coefficient array, or a single rational.
    fn from_json(ctx: &CyclotomicField, v: &Value) -> Result<Self, FieldError> {
        match v {
            Value::Array(items) => {
                let coeffs = items.iter().map(rational_from_json).collect::<Result<Vec<_>, _>>()?;
                ctx.from_coeffs(coeffs)
            }
            other => Ok(ctx.from_rational(rational_from_json(other)?)),
        }
    }
    fn descriptor(ctx: &CyclotomicField) -> FieldDescriptor {
        FieldDescriptor::Cyclotomic { conductor: ctx.conductor() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rational;

    #[test]
    fn descriptor_spellings() {
        let long: FieldDescriptor =
            serde_json::from_str(r#"{"field":"cyclotomic","conductor":7}"#).unwrap();
        let short: FieldDescriptor = serde_json::from_str(r#"{"cyclotomic":7}"#).unwrap();
        assert_eq!(long, short);
        let p: FieldDescriptor = serde_json::from_str(r#"{"field":"prime","p":29}"#).unwrap();
        assert_eq!(p, FieldDescriptor::Prime { p: 29 });
        assert_eq!(serde_json::to_value(long).unwrap(), json!({"field":"cyclotomic","conductor":7}));
        assert!(serde_json::from_str::<FieldDescriptor>(r#"{"field":"padic"}"#).is_err());
        assert!(FieldDescriptor::Prime { p: 91 }.validate().is_err());
    }

    #[test]
    fn cyclotomic_coefficients_round_trip() {
        let k = CyclotomicField::new(7).unwrap();
        let a = k.from_rational(rational(-3, 4)) + k.zeta_pow(5);
        let v = a.to_json();
        assert_eq!(v[0], json!("-3/4"));
        assert_eq!(CyclotomicNumber::from_json(&k, &v).unwrap(), a);
        assert_eq!(CyclotomicNumber::from_json(&k, &json!("2")).unwrap(), k.from_i64(2));
        assert!(CyclotomicNumber::from_json(&k, &json!(["1", "2"])).is_err());
    }
}
