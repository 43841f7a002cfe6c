use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Monomial, PolyError, SparsePolynomial};
use crate::exactfield::{FieldDescriptor, JsonCoeff};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialTerm {
    pub exp: Vec<u16>,
    pub coeff: Value,
}

/// On-disk form `{"nvars":6,"terms":[{"exp":[2,1,0,0,0,0],"coeff":"1"}, …]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    pub nvars: usize,
    pub terms: Vec<PolynomialTerm>,
}

impl PolynomialFile {
    /// Terms are written largest first.
    pub fn from_polynomial<F: JsonCoeff>(p: &SparsePolynomial<F>, vars: Option<Vec<String>>) -> Self {
        PolynomialFile {
            field: Some(F::descriptor(p.ctx())),
            vars,
            nvars: p.nvars(),
            terms: p
                .terms()
                .rev()
                .map(|(m, c)| PolynomialTerm {
                    exp: m.exps().to_vec(),
                    coeff: c.to_json(),
                })
                .collect(),
        }
    }

    pub fn to_polynomial<F: JsonCoeff>(&self, ctx: &F::Context) -> Result<SparsePolynomial<F>, PolyError> {
        let mut p = SparsePolynomial::zero(self.nvars, ctx);
        for t in &self.terms {
            if t.exp.len() != self.nvars {
                return Err(PolyError::ArityMismatch {
                    left: self.nvars,
                    right: t.exp.len(),
                });
            }
            p.add_term(Monomial::new(&t.exp), F::from_json(ctx, &t.coeff)?);
        }
        Ok(p)
    }
}
