use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{pfaffian, PfaffianError};
use crate::exactfield::{Field, FieldDescriptor, JsonCoeff};
use crate::linalg::Matrix;
use crate::polyring::{LinearSubstitution, Monomial, SparsePolynomial};
use crate::reptheory::Subspace;
use crate::wedge::{bivector_to_skew, skew_to_bivector, wedge_dim};

/// Skew matrix of linear forms `M(x) = Σ x_i (B_i + λ C_i)`.
/// The optional `C_i` carry a pencil parameter λ treated as one more
/// variable in the symbolic matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewLinearFamily<F: Field> {
    size: usize,
    ctx: F::Context,
    matrices: Vec<Matrix<F>>,
    lambda_matrices: Option<Vec<Matrix<F>>>,
}

impl<F: Field> SkewLinearFamily<F> {
    pub fn new(
        size: usize,
        ctx: &F::Context,
        matrices: Vec<Matrix<F>>,
        lambda_matrices: Option<Vec<Matrix<F>>>,
    ) -> Result<Self, PfaffianError> {
        if size % 2 == 1 {
            return Err(PfaffianError::OddSize(size));
        }
        let all = matrices.iter().chain(lambda_matrices.iter().flatten());
        for b in all {
            if b.rows() != size || b.cols() != size {
                return Err(PfaffianError::DimensionMismatch);
            }
            if !b.is_skew() {
                return Err(PfaffianError::NotSkew);
            }
        }
        if let Some(c) = &lambda_matrices {
            if c.len() != matrices.len() {
                return Err(PfaffianError::DimensionMismatch);
            }
        }
        Ok(SkewLinearFamily {
            size,
            ctx: ctx.clone(),
            matrices,
            lambda_matrices,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of coordinates `x_i` (the pencil parameter excluded).
    pub fn nvars(&self) -> usize {
        self.matrices.len()
    }

    pub fn ctx(&self) -> &F::Context {
        &self.ctx
    }

    pub fn has_lambda(&self) -> bool {
        self.lambda_matrices.is_some()
    }

    pub fn basis_matrices(&self) -> &[Matrix<F>] {
        &self.matrices
    }

    pub fn lambda_matrices(&self) -> Option<&[Matrix<F>]> {
        self.lambda_matrices.as_deref()
    }

    /// The ordinary family at a fixed parameter value.
    pub fn at_lambda(&self, lambda: &F) -> Self {
        let matrices = match &self.lambda_matrices {
            None => self.matrices.clone(),
            Some(c) => self
                .matrices
                .iter()
                .zip(c)
                .map(|(b, c)| b.add(&c.scale(lambda)))
                .collect(),
        };
        SkewLinearFamily {
            size: self.size,
            ctx: self.ctx.clone(),
            matrices,
            lambda_matrices: None,
        }
    }

    /// `M(x)` at a point given in the coordinates `x_i`.
    pub fn matrix_at(&self, x: &[F]) -> Matrix<F> {
        assert!(self.lambda_matrices.is_none(), "fix the pencil parameter first");
        assert_eq!(x.len(), self.matrices.len());
        let mut m = Matrix::zeros(self.size, self.size, &F::zero(&self.ctx));
        for (b, xi) in self.matrices.iter().zip(x) {
            if xi.is_zero() {
                continue;
            }
            m = m.add(&b.scale(xi));
        }
        m
    }

    /// Number of variables of the symbolic matrix: `nvars`, plus one for λ.
    pub fn symbolic_nvars(&self) -> usize {
        self.nvars() + self.has_lambda() as usize
    }

    /// `M(x)` as a matrix of polynomials; λ, when present, is the last variable.
    pub fn symbolic(&self) -> Matrix<SparsePolynomial<F>> {
        let n = self.symbolic_nvars();
        let m = self.nvars();
        let zero = SparsePolynomial::zero(n, &self.ctx);
        Matrix::from_fn(self.size, self.size, &zero, |r, c| {
            let mut p = SparsePolynomial::zero(n, &self.ctx);
            for i in 0..m {
                p.add_term(Monomial::var(n, i), self.matrices[i][(r, c)].clone());
                if let Some(cs) = &self.lambda_matrices {
                    let mut e = Monomial::var(n, i);
                    e.exps_mut()[m] = 1;
                    p.add_term(e, cs[i][(r, c)].clone());
                }
            }
            p
        })
    }

    /// The Pfaffian of the symbolic matrix.
    pub fn pfaffian(&self) -> SparsePolynomial<F> {
        pfaffian(&self.symbolic()).expect("families are skew of even size")
    }

    /// The basis bivectors in wedge coordinates (parameter-free families).
    pub fn bivectors(&self) -> Vec<Vec<F>> {
        self.matrices.iter().map(skew_to_bivector).collect()
    }

    /// The subspace `L ⊂ Λ²V` spanned by the basis bivectors.
    pub fn subspace(&self) -> Subspace<F> {
        Subspace::span(&self.bivectors(), wedge_dim(self.size), &self.ctx)
    }
}

/// Identifies each basis bivector of `L` with a constant skew matrix via
/// `e_i ∧ e_j ↦ E_ij − E_ji`.
pub fn build_family<F: Field>(basis: &[Vec<F>], size: usize, ctx: &F::Context) -> Result<SkewLinearFamily<F>, PfaffianError> {
    let d = wedge_dim(size);
    if basis.iter().any(|b| b.len() != d) {
        return Err(PfaffianError::DimensionMismatch);
    }
    let mats = basis.iter().map(|b| bivector_to_skew(b, size)).collect();
    SkewLinearFamily::new(size, ctx, mats, None)
}

/// Like [`build_family`], taking the echelon basis of a subspace.
pub fn build_family_from_subspace<F: Field>(l: &Subspace<F>, size: usize) -> Result<SkewLinearFamily<F>, PfaffianError> {
    if l.ambient() != wedge_dim(size) {
        return Err(PfaffianError::DimensionMismatch);
    }
    let ctx = l.basis().first().map(|v| v[0].context()).ok_or(PfaffianError::DimensionMismatch)?;
    build_family(l.basis(), size, &ctx)
}

/// Rank and kernel of `M(x)` at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelResult<F: Field> {
    pub rank: usize,
    pub kernel: Vec<Vec<F>>,
}

pub fn kernel_at_point<F: Field>(fam: &SkewLinearFamily<F>, x: &[F]) -> KernelResult<F> {
    let m = fam.matrix_at(x);
    let kernel = m.kernel();
    KernelResult {
        rank: fam.size() - kernel.len(),
        kernel,
    }
}

/// Outcome of comparing `M(σx)` with `ρ M(x) ρᵀ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CongruenceOutcome<F: Field> {
    pub holds: bool,
    pub scalar: Option<F>,
}

/// Decides whether `M(σx) = c · ρ M(x) ρᵀ` for a single scalar `c`;
/// `σ` acts on all symbolic variables (λ included when present).
pub fn congruence_semi_invariance<F: Field>(
    fam: &SkewLinearFamily<F>,
    sigma: &LinearSubstitution<F>,
    rho: &Matrix<F>,
) -> Result<CongruenceOutcome<F>, PfaffianError> {
    let sym = fam.symbolic();
    if sigma.nvars() != fam.symbolic_nvars() || rho.rows() != fam.size() {
        return Err(PfaffianError::DimensionMismatch);
    }
    let forms = sigma.linear_forms(fam.ctx());
    let left = sym.map(sym.zero_elem(), |p| p.compose(&forms).expect("arity checked"));
    let n = fam.symbolic_nvars();
    let rho_p = rho.map(sym.zero_elem(), |c| SparsePolynomial::constant(n, c.clone()));
    let right = rho_p.mul(&sym).mul(&rho_p.transpose());
    let no = CongruenceOutcome { holds: false, scalar: None };
    let Some(pos) = right.entries().iter().position(|p| !p.is_zero()) else {
        return Ok(CongruenceOutcome {
            holds: left.is_zero(),
            scalar: None,
        });
    };
    let r = &right.entries()[pos];
    let (mono, coeff) = r.leading_term().expect("nonzero");
    let Some(c) = left.entries()[pos].coeff(mono).div(coeff) else {
        return Ok(no);
    };
    if c.is_zero() {
        return Ok(no);
    }
    let holds = left.entries().iter().zip(right.entries()).all(|(l, r)| l == &r.scale(&c));
    Ok(if holds {
        CongruenceOutcome { holds, scalar: Some(c) }
    } else {
        no
    })
}

/// On-disk family: `{"N":6,"vars":["x1",…,"x6","lambda"],"B":[…],"B_lambda":[…]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyFile {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDescriptor>,
    pub vars: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<Vec<Value>>>,
    #[serde(rename = "B_lambda", default, skip_serializing_if = "Option::is_none")]
    pub b_lambda: Option<Vec<Vec<Vec<Value>>>>,
}

fn encode<F: JsonCoeff>(ms: &[Matrix<F>]) -> Vec<Vec<Vec<Value>>> {
    ms.iter()
        .map(|m| m.to_rows().iter().map(|r| r.iter().map(|x| x.to_json()).collect()).collect())
        .collect()
}

fn decode<F: JsonCoeff>(raw: &[Vec<Vec<Value>>], n: usize, ctx: &F::Context) -> Result<Vec<Matrix<F>>, PfaffianError> {
    let mut out = Vec::new();
    for m in raw {
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(PfaffianError::DimensionMismatch);
        }
        let mut rows = Vec::new();
        for r in m {
            rows.push(r.iter().map(|v| F::from_json(ctx, v)).collect::<Result<Vec<_>, _>>()?);
        }
        out.push(Matrix::from_rows(rows));
    }
    Ok(out)
}

impl FamilyFile {
    pub fn from_family<F: JsonCoeff>(fam: &SkewLinearFamily<F>) -> Self {
        let mut vars: Vec<String> = (1..=fam.nvars()).map(|i| format!("x{i}")).collect();
        if fam.has_lambda() {
            vars.push("lambda".into());
        }
        FamilyFile {
            n: fam.size(),
            field: Some(F::descriptor(fam.ctx())),
            vars,
            b: encode(fam.basis_matrices()),
            b_lambda: fam.lambda_matrices().map(encode),
        }
    }

    pub fn to_family<F: JsonCoeff>(&self, ctx: &F::Context) -> Result<SkewLinearFamily<F>, PfaffianError> {
        let b = decode(&self.b, self.n, ctx)?;
        let c = self.b_lambda.as_deref().map(|c| decode(c, self.n, ctx)).transpose()?;
        SkewLinearFamily::new(self.n, ctx, b, c)
    }
}
