use super::{Monomial, PolyError, SparsePolynomial};
use crate::exactfield::Field;
use crate::linalg::Matrix;

/// Invertible linear change of coordinates `x_i ↦ Σ_j A_ij x_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSubstitution<F: Field> {
    matrix: Matrix<F>,
    inverse: Matrix<F>,
    tag: Option<String>,
}

impl<F: Field> LinearSubstitution<F> {
    pub fn new(matrix: Matrix<F>, tag: Option<&str>) -> Result<Self, PolyError> {
        let inverse = matrix.inverse().ok_or(PolyError::NotInvertible)?;
        Ok(LinearSubstitution {
            matrix,
            inverse,
            tag: tag.map(str::to_string),
        })
    }

    pub fn identity(n: usize, ctx: &F::Context) -> Self {
        let id = Matrix::identity(n, &F::zero(ctx));
        LinearSubstitution {
            matrix: id.clone(),
            inverse: id,
            tag: Some("id".into()),
        }
    }

    /// `x_i ↦ d_i x_i`.
    pub fn diagonal(entries: &[F], tag: Option<&str>) -> Result<Self, PolyError> {
        Self::new(Matrix::diagonal(entries), tag)
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Matrix<F> {
        &self.inverse
    }

    pub fn tag(&self) -> Option<&str> {
        self.tag.as_deref()
    }

    pub fn nvars(&self) -> usize {
        self.matrix.rows()
    }

    pub fn inverse(&self) -> Self {
        LinearSubstitution {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
            tag: self.tag.as_ref().map(|t| format!("{t}^-1")),
        }
    }

    /// The substitution `x ↦ A(B x)`, i.e. applying `self` and then `other`
    /// to a polynomial gives `f(A B x)`.
    pub fn then(&self, other: &Self) -> Self {
        LinearSubstitution {
            matrix: self.matrix.mul(&other.matrix),
            inverse: other.inverse.mul(&self.inverse),
            tag: match (&self.tag, &other.tag) {
                (Some(a), Some(b)) => Some(format!("{a}{b}")),
                _ => None,
            },
        }
    }

    /// The images of the variables as linear forms.
    pub fn linear_forms(&self, ctx: &F::Context) -> Vec<SparsePolynomial<F>> {
        let n = self.nvars();
        (0..n)
            .map(|i| {
                SparsePolynomial::from_terms(
                    n,
                    ctx,
                    (0..n).map(|j| (Monomial::var(n, j), self.matrix[(i, j)].clone())),
                )
            })
            .collect()
    }
}

/// `f(A x)`.
pub fn substitute_linear<F: Field>(
    f: &SparsePolynomial<F>,
    sigma: &LinearSubstitution<F>,
) -> Result<SparsePolynomial<F>, PolyError> {
    if sigma.nvars() != f.nvars() {
        return Err(PolyError::ArityMismatch {
            left: f.nvars(),
            right: sigma.nvars(),
        });
    }
    f.compose(&sigma.linear_forms(f.ctx()))
}

/// Outcome of comparing `f∘σ` with `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct SemiInvarianceReport<F: Field> {
    pub is_semi_invariant: bool,
    pub scalar: Option<F>,
}

impl<F: Field> SemiInvarianceReport<F> {
    fn from_images(f: &SparsePolynomial<F>, g: &SparsePolynomial<F>) -> Self {
        let no = SemiInvarianceReport {
            is_semi_invariant: false,
            scalar: None,
        };
        let Some((m, c)) = f.leading_term() else {
            return no;
        };
        let Some(scalar) = g.coeff(m).div(c) else {
            return no;
        };
        if scalar.is_zero() || &f.scale(&scalar) != g {
            return no;
        }
        SemiInvarianceReport {
            is_semi_invariant: true,
            scalar: Some(scalar),
        }
    }
}

/// Decides whether `f∘σ = c·f` for a scalar `c`, reading `c` off the leading
/// term and checking every other term.
pub fn semi_invariance<F: Field>(
    f: &SparsePolynomial<F>,
    sigma: &LinearSubstitution<F>,
) -> Result<SemiInvarianceReport<F>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let g = substitute_linear(f, sigma)?;
    Ok(SemiInvarianceReport::from_images(f, &g))
}

/// Signed permutation of coordinates, `x_i ↦ sign_i · x_{target_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    target: Vec<usize>,
    negate: Vec<bool>,
}

impl SignedPermutation {
    pub fn new(target: Vec<usize>, negate: Vec<bool>) -> Result<Self, PolyError> {
        let n = target.len();
        let mut seen = vec![false; n];
        for &t in &target {
            if t >= n || std::mem::replace(&mut seen[t], true) {
                return Err(PolyError::NotInvertible);
            }
        }
        if negate.len() != n {
            return Err(PolyError::ArityMismatch { left: n, right: negate.len() });
        }
        Ok(SignedPermutation { target, negate })
    }

    pub fn permutation(target: Vec<usize>) -> Result<Self, PolyError> {
        let n = target.len();
        Self::new(target, vec![false; n])
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            target: (0..n).collect(),
            negate: vec![false; n],
        }
    }

    pub fn len(&self) -> usize {
        self.target.len()
    }

    pub fn is_empty(&self) -> bool {
        self.target.is_empty()
    }

    pub fn target(&self) -> &[usize] {
        &self.target
    }

    pub fn negate(&self) -> &[bool] {
        &self.negate
    }

    /// `self` followed by `other` on points: `i ↦ other(self(i))`.
    pub fn then(&self, other: &Self) -> Self {
        SignedPermutation {
            target: self.target.iter().map(|&t| other.target[t]).collect(),
            negate: self
                .target
                .iter()
                .zip(&self.negate)
                .map(|(&t, &s)| s ^ other.negate[t])
                .collect(),
        }
    }

    /// Transport along a labeling `β` of variables by points:
    /// variable `i` sits at point `β(i)`.
    pub fn conjugate_by(&self, labeling: &[usize]) -> Self {
        let n = self.len();
        let mut inv = vec![0; n];
        for (i, &b) in labeling.iter().enumerate() {
            inv[b] = i;
        }
        SignedPermutation {
            target: (0..n).map(|i| inv[self.target[labeling[i]]]).collect(),
            negate: (0..n).map(|i| self.negate[labeling[i]]).collect(),
        }
    }

    /// `f(σ x)` computed directly on exponent vectors.
    pub fn apply<F: Field>(&self, f: &SparsePolynomial<F>) -> SparsePolynomial<F> {
        let n = f.nvars();
        assert_eq!(n, self.len());
        let mut out = SparsePolynomial::zero(n, f.ctx());
        for (m, c) in f.terms() {
            let mut exps = vec![0u16; n];
            let mut odd = false;
            for (i, &e) in m.exps().iter().enumerate() {
                exps[self.target[i]] += e;
                odd ^= self.negate[i] && e % 2 == 1;
            }
            out.add_term(Monomial::new(&exps), if odd { -c.clone() } else { c.clone() });
        }
        out
    }

    pub fn to_substitution<F: Field>(&self, ctx: &F::Context) -> LinearSubstitution<F> {
        let n = self.len();
        let m = Matrix::from_fn(n, n, &F::zero(ctx), |i, j| {
            if self.target[i] != j {
                F::zero(ctx)
            } else if self.negate[i] {
                -F::one(ctx)
            } else {
                F::one(ctx)
            }
        });
        LinearSubstitution::new(m, None).expect("signed permutations are invertible")
    }

    pub fn semi_invariance<F: Field>(&self, f: &SparsePolynomial<F>) -> SemiInvarianceReport<F> {
        SemiInvarianceReport::from_images(f, &self.apply(f))
    }
}
