use crate::exactfield::Field;
use crate::linalg::Matrix;

/// Linear subspace of `F^n`, stored by a basis in reduced row echelon form.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    ambient: usize,
    zero: F,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero_space(ambient: usize, ctx: &F::Context) -> Self {
        Subspace {
            ambient,
            zero: F::zero(ctx),
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn span(vectors: &[Vec<F>], ambient: usize, ctx: &F::Context) -> Self {
        if vectors.is_empty() {
            return Self::zero_space(ambient, ctx);
        }
        let m = Matrix::from_fn(vectors.len(), ambient, &F::zero(ctx), |i, j| vectors[i][j].clone());
        let (r, pivots) = m.rref();
        Subspace {
            ambient,
            zero: F::zero(ctx),
            rows: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
            pivots,
        }
    }

    /// Column space of a matrix.
    pub fn image(m: &Matrix<F>, ctx: &F::Context) -> Self {
        let cols: Vec<Vec<F>> = (0..m.cols()).map(|j| m.column(j)).collect();
        Self::span(&cols, m.rows(), ctx)
    }

    pub fn whole(ambient: usize, ctx: &F::Context) -> Self {
        let id = Matrix::identity(ambient, &F::zero(ctx));
        Self::span(&id.to_rows(), ambient, ctx)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after elimination against the echelon basis.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if w[c].is_zero() {
                continue;
            }
            let f = w[c].clone();
            for (x, r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.clone() - f.clone() * r.clone();
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_space(&self, other: &Self) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// `A·S ⊆ S`.
    pub fn is_stable_under(&self, a: &Matrix<F>) -> bool {
        self.rows.iter().all(|r| self.contains(&a.mul_vec(r)))
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        Self::span(&all, self.ambient, &self.zero.context())
    }

    pub fn intersection_dim(&self, other: &Self) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    /// `{y : ⟨b, y⟩ = 0 for every basis vector b}` under the coordinate pairing.
    pub fn annihilator(&self) -> Self {
        let ctx = self.zero.context();
        if self.rows.is_empty() {
            return Self::whole(self.ambient, &ctx);
        }
        let m = Matrix::from_fn(self.rows.len(), self.ambient, &self.zero, |i, j| self.rows[i][j].clone());
        Self::span(&m.kernel(), self.ambient, &ctx)
    }

    /// Coordinates of a member in the echelon basis.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c].clone()).collect())
    }
}
