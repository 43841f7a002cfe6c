use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::RepError;
use crate::exactfield::Field;
use crate::linalg::Matrix;
use crate::wedge::exterior_square_matrix;

/// Default bound on the number of enumerated elements.
pub const DEFAULT_ELEMENT_CAP: usize = 10_000;

/// Combinatorial data of an enumerated finite group, shared by every
/// representation built over the same enumeration.
#[derive(Debug)]
pub struct GroupTables {
    names: Vec<String>,
    words: Vec<Vec<usize>>,
    right_mul: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    square: Vec<usize>,
    generator_index: Vec<usize>,
}

impl GroupTables {
    pub fn order(&self) -> usize {
        self.words.len()
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    /// Shortest word in the generators, lexicographically first among those.
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn word_string(&self, i: usize) -> String {
        if self.words[i].is_empty() {
            return "e".into();
        }
        self.words[i].iter().map(|&k| self.names[k].as_str()).collect::<Vec<_>>().join("")
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generator(&self, k: usize) -> usize {
        self.generator_index[k]
    }

    /// Index of `a · s_k`.
    pub fn times_generator(&self, a: usize, k: usize) -> usize {
        self.right_mul[a][k]
    }

    /// Index of `a · b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.words[b].iter().fold(a, |cur, &k| self.right_mul[cur][k])
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn square(&self, a: usize) -> usize {
        self.square[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut cur = a;
        let mut k = 1;
        while cur != 0 {
            cur = self.mul(cur, a);
            k += 1;
        }
        k
    }

    /// Index of `h g h⁻¹`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(h, g), self.inverse[h])
    }

    /// Finds an element by its word.
    pub fn element_of_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |cur, &k| self.right_mul[cur][k])
    }

    pub fn all_words(&self) -> Vec<String> {
        (0..self.order()).map(|i| self.word_string(i)).collect()
    }
}

/// A representation of an enumerated group: one matrix per element,
/// index-aligned with the [`GroupTables`].
#[derive(Clone, Debug)]
pub struct MatrixRepresentation<F: Field> {
    tables: Arc<GroupTables>,
    ctx: F::Context,
    dim: usize,
    matrices: Vec<Matrix<F>>,
}

/// Enumerates the group generated by `generators` by breadth-first closure;
/// elements are ordered by word length and then lexicographically.
pub fn enumerate_group<F: Field>(
    generators: &[Matrix<F>],
    names: &[&str],
    ctx: &F::Context,
    cap: usize,
) -> Result<MatrixRepresentation<F>, RepError> {
    let dim = generators.first().map(|g| g.rows()).unwrap_or(0);
    for g in generators {
        if g.rows() != dim || !g.is_square() {
            return Err(RepError::DimensionMismatch);
        }
        if g.inverse().is_none() {
            return Err(RepError::NotInvertible);
        }
    }
    let names: Vec<String> = if names.len() == generators.len() {
        names.iter().map(|s| s.to_string()).collect()
    } else {
        (0..generators.len()).map(|k| format!("s{}", k + 1)).collect()
    };
    let zero = F::zero(ctx);
    let id = Matrix::identity(dim, &zero);
    let mut matrices = vec![id.clone()];
    let mut words = vec![Vec::new()];
    let mut index: HashMap<Matrix<F>, usize> = HashMap::from([(id, 0)]);
    let mut right_mul: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        let mut row = Vec::with_capacity(generators.len());
        for (k, g) in generators.iter().enumerate() {
            let prod = matrices[a].mul(g);
            let b = match index.get(&prod) {
                Some(&b) => b,
                None => {
                    let b = matrices.len();
                    if b >= cap {
                        return Err(RepError::CapExceeded { cap });
                    }
                    let mut w = words[a].clone();
                    w.push(k);
                    words.push(w);
                    index.insert(prod.clone(), b);
                    matrices.push(prod);
                    queue.push_back(b);
                    b
                }
            };
            row.push(b);
        }
        right_mul.push(row);
    }
    let tables = build_tables(names, words, right_mul);
    Ok(MatrixRepresentation {
        tables: Arc::new(tables),
        ctx: ctx.clone(),
        dim,
        matrices,
    })
}

fn build_tables(names: Vec<String>, words: Vec<Vec<usize>>, right_mul: Vec<Vec<usize>>) -> GroupTables {
    let n = words.len();
    let ngen = names.len();
    let generator_index: Vec<usize> = (0..ngen).map(|k| right_mul[0][k]).collect();
    let mut t = GroupTables {
        names,
        words,
        right_mul,
        inverse: vec![0; n],
        square: vec![0; n],
        generator_index,
    };
    // s_k^{-1} = s_k^{ord-1}
    let gen_inv: Vec<usize> = (0..ngen)
        .map(|k| {
            let g = t.generator_index[k];
            let mut prev = 0;
            let mut cur = g;
            while cur != 0 {
                prev = cur;
                cur = t.right_mul[cur][k];
            }
            if g == 0 {
                0
            } else {
                prev
            }
        })
        .collect();
    for a in 0..n {
        let inv = t.words[a].iter().rev().fold(0, |cur, &k| t.mul(cur, gen_inv[k]));
        t.inverse[a] = inv;
        t.square[a] = t.mul(a, a);
    }
    t
}

impl<F: Field> MatrixRepresentation<F> {
    pub fn tables(&self) -> &Arc<GroupTables> {
        &self.tables
    }

    pub fn order(&self) -> usize {
        self.tables.order()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ctx(&self) -> &F::Context {
        &self.ctx
    }

    pub fn matrix(&self, i: usize) -> &Matrix<F> {
        &self.matrices[i]
    }

    pub fn matrices(&self) -> &[Matrix<F>] {
        &self.matrices
    }

    pub fn generator_matrix(&self, k: usize) -> &Matrix<F> {
        &self.matrices[self.tables.generator(k)]
    }

    fn same_group(&self, other: &Self) -> Result<(), RepError> {
        if Arc::ptr_eq(&self.tables, &other.tables) {
            Ok(())
        } else {
            Err(RepError::DifferentGroups)
        }
    }

    /// The representation of the same group determined by generator images;
    /// checks that the images respect every edge of the Cayley graph.
    pub fn from_generator_images(&self, images: &[Matrix<F>]) -> Result<Self, RepError> {
        let t = &self.tables;
        if images.len() != t.num_generators() {
            return Err(RepError::DimensionMismatch);
        }
        let dim = images.first().map(|m| m.rows()).unwrap_or(0);
        if images.iter().any(|m| m.rows() != dim || !m.is_square()) {
            return Err(RepError::DimensionMismatch);
        }
        let zero = F::zero(&self.ctx);
        let mut mats: Vec<Matrix<F>> = Vec::with_capacity(t.order());
        for a in 0..t.order() {
            let m = t.words[a]
                .iter()
                .fold(Matrix::identity(dim, &zero), |acc, &k| acc.mul(&images[k]));
            mats.push(m);
        }
        for a in 0..t.order() {
            for (k, img) in images.iter().enumerate() {
                if mats[a].mul(img) != mats[t.right_mul[a][k]] {
                    return Err(RepError::NotAHomomorphism {
                        element: t.word_string(a),
                        generator: t.names[k].clone(),
                    });
                }
            }
        }
        Ok(MatrixRepresentation {
            tables: self.tables.clone(),
            ctx: self.ctx.clone(),
            dim,
            matrices: mats,
        })
    }

    pub fn trivial(&self) -> Self {
        let one = Matrix::identity(1, &F::zero(&self.ctx));
        self.map_matrices(1, |_| one.clone())
    }

    fn map_matrices(&self, dim: usize, f: impl Fn(&Matrix<F>) -> Matrix<F>) -> Self {
        MatrixRepresentation {
            tables: self.tables.clone(),
            ctx: self.ctx.clone(),
            dim,
            matrices: self.matrices.iter().map(f).collect(),
        }
    }

    /// Λ²V in the wedge basis.
    pub fn exterior_square(&self) -> Self {
        let n = self.dim;
        self.map_matrices(n * (n.saturating_sub(1)) / 2, exterior_square_matrix)
    }

    /// `V ⊗ W` via Kronecker products, basis `v_i ⊗ w_j` at index `i·dim W + j`.
    pub fn tensor(&self, other: &Self) -> Result<Self, RepError> {
        self.same_group(other)?;
        Ok(MatrixRepresentation {
            tables: self.tables.clone(),
            ctx: self.ctx.clone(),
            dim: self.dim * other.dim,
            matrices: self.matrices.iter().zip(&other.matrices).map(|(a, b)| a.kronecker(b)).collect(),
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, RepError> {
        self.same_group(other)?;
        Ok(MatrixRepresentation {
            tables: self.tables.clone(),
            ctx: self.ctx.clone(),
            dim: self.dim + other.dim,
            matrices: self.matrices.iter().zip(&other.matrices).map(|(a, b)| a.direct_sum(b)).collect(),
        })
    }

    /// `ρ*(g) = ρ(g⁻¹)ᵀ`.
    pub fn dual(&self) -> Self {
        let mats = (0..self.order())
            .map(|a| self.matrices[self.tables.inverse(a)].transpose())
            .collect();
        MatrixRepresentation {
            tables: self.tables.clone(),
            ctx: self.ctx.clone(),
            dim: self.dim,
            matrices: mats,
        }
    }

    /// Elements acting as a scalar matrix.
    pub fn scalar_elements(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&a| {
                let m = &self.matrices[a];
                let c = m[(0, 0)].clone();
                (0..self.dim).all(|i| (0..self.dim).all(|j| if i == j { m[(i, j)] == c } else { m[(i, j)].is_zero() }))
            })
            .collect()
    }

    /// Elements acting as the identity.
    pub fn kernel_elements(&self) -> Vec<usize> {
        (0..self.order()).filter(|&a| self.matrices[a].is_identity()).collect()
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel_elements() == vec![0]
    }
}
