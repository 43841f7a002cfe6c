use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::{enumerate_group, MatrixRepresentation, RepError, DEFAULT_ELEMENT_CAP};
use crate::exactfield::{FieldDescriptor, JsonCoeff};
use crate::linalg::Matrix;

/// On-disk group: `{"field":{"cyclotomic":7},"dim":6,"generators":[…],"names":["g","h"]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupFile {
    pub field: FieldDescriptor,
    pub dim: usize,
    pub generators: Vec<Vec<Vec<Value>>>,
    pub names: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

impl GroupFile {
    pub fn from_matrices<F: JsonCoeff>(ctx: &F::Context, generators: &[Matrix<F>], names: &[&str]) -> Self {
        GroupFile {
            field: F::descriptor(ctx),
            dim: generators.first().map(|g| g.rows()).unwrap_or(0),
            generators: generators
                .iter()
                .map(|g| g.to_rows().iter().map(|r| r.iter().map(|x| x.to_json()).collect()).collect())
                .collect(),
            names: names.iter().map(|s| s.to_string()).collect(),
            cap: None,
        }
    }

    pub fn generator_matrices<F: JsonCoeff>(&self, ctx: &F::Context) -> Result<Vec<Matrix<F>>, RepError> {
        if F::descriptor(ctx) != self.field {
            return Err(RepError::FieldMismatch(self.field.to_string()));
        }
        let mut out = Vec::new();
        for g in &self.generators {
            if g.len() != self.dim || g.iter().any(|r| r.len() != self.dim) {
                return Err(RepError::DimensionMismatch);
            }
            let mut rows = Vec::with_capacity(self.dim);
            for r in g {
                rows.push(r.iter().map(|v| F::from_json(ctx, v)).collect::<Result<Vec<_>, _>>()?);
            }
            out.push(Matrix::from_rows(rows));
        }
        Ok(out)
    }

    pub fn enumerate<F: JsonCoeff>(&self, ctx: &F::Context) -> Result<MatrixRepresentation<F>, RepError> {
        let gens = self.generator_matrices(ctx)?;
        let names: Vec<&str> = self.names.iter().map(String::as_str).collect();
        enumerate_group(&gens, &names, ctx, self.cap.unwrap_or(DEFAULT_ELEMENT_CAP))
    }

    /// SHA-256 of the compact JSON serialization.
    pub fn content_hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("serializable");
        hex::encode(Sha256::digest(&bytes))
    }
}
