use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::{Monomial, PolyError};
use crate::exactfield::{Field, Ring};

/// Multivariate polynomial over an exact field, stored as a map from exponent
/// vectors to nonzero coefficients. Iteration is in increasing degrevlex order.
#[derive(Clone)]
pub struct SparsePolynomial<F: Field> {
    nvars: usize,
    ctx: F::Context,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> SparsePolynomial<F> {
    pub fn zero(nvars: usize, ctx: &F::Context) -> Self {
        SparsePolynomial {
            nvars,
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars, &c.context());
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize, ctx: &F::Context) -> Self {
        Self::constant(nvars, F::one(ctx))
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize, ctx: &F::Context) -> Self {
        assert!(i < nvars, "variable index {i} out of range");
        Self::term(Monomial::var(nvars, i), F::one(ctx))
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let mut p = Self::zero(m.nvars(), &c.context());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, ctx: &F::Context, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(nvars, ctx);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c · m`, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: F) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = std::mem::replace(e.get_mut(), c.zero_like()) + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ctx(&self) -> &F::Context {
        &self.ctx
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn coeff_of(&self, exps: &[u16]) -> F {
        self.coeff(&Monomial::new(exps))
    }

    /// Largest term in degrevlex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.keys().map(|m| m.exps()[i]).max().unwrap_or(0)
    }

    fn check_arity(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::ArityMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.nvars, &self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, &self.ctx);
        }
        SparsePolynomial {
            nvars: self.nvars,
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &F) -> Self {
        let mut out = Self::zero(self.nvars, &self.ctx);
        for (k, a) in &self.terms {
            out.add_term(k.mul(m), a.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars, &self.ctx);
        for _ in 0..e {
            acc = acc.checked_mul(self).expect("same arity");
        }
        acc
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial_derivative(&self, i: usize) -> Self {
        assert!(i < self.nvars, "variable index {i} out of range");
        let mut out = Self::zero(self.nvars, &self.ctx);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.exps_mut()[i] -= 1;
            out.add_term(d, c.clone() * F::from_i64(&self.ctx, e as i64));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial_derivative(i)).collect()
    }

    /// Value at a point whose coordinates live in a ring `R` receiving the
    /// coefficients through `embed`.
    pub fn eval_with<R: Ring>(&self, point: &[R], embed: impl Fn(&F) -> R) -> R {
        assert_eq!(point.len(), self.nvars);
        let zero = point
            .first()
            .map(|p| p.zero_like())
            .unwrap_or_else(|| embed(&F::zero(&self.ctx)));
        let mut acc = zero.clone();
        for (m, c) in &self.terms {
            let mut t = embed(c);
            for (x, &e) in point.iter().zip(m.exps()) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn eval(&self, point: &[F]) -> F {
        if self.nvars == 0 {
            return self.coeff(&Monomial::one(0));
        }
        self.eval_with(point, |c| c.clone())
    }

    /// Applies a coefficient map into another field, dropping zero images.
    pub fn map_coeffs<G: Field, E>(
        &self,
        ctx: &G::Context,
        f: impl Fn(&F) -> Result<G, E>,
    ) -> Result<SparsePolynomial<G>, E> {
        let mut out = SparsePolynomial::zero(self.nvars, ctx);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Replaces every variable `x_i` by the polynomial `images[i]`.
    pub fn compose(&self, images: &[Self]) -> Result<Self, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::ArityMismatch {
                left: self.nvars,
                right: images.len(),
            });
        }
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(PolyError::ArityMismatch {
                left: target,
                right: bad.nvars,
            });
        }
        let mut powers: Vec<Vec<Self>> = images.iter().map(|p| vec![Self::one(target, &self.ctx), p.clone()]).collect();
        let mut out = Self::zero(target, &self.ctx);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().checked_mul(&images[i])?;
                    powers[i].push(next);
                }
                t = t.checked_mul(&powers[i][e as usize])?;
            }
            out = out.checked_add(&t)?;
        }
        Ok(out)
    }

    /// Sets `x_i = value` and removes the variable.
    pub fn specialize(&self, i: usize, value: &F) -> Self {
        assert!(i < self.nvars);
        let mut out = Self::zero(self.nvars - 1, &self.ctx);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            let mut exps = m.exps().to_vec();
            exps.remove(i);
            out.add_term(Monomial::new(&exps), c.clone() * value.pow(e as u64));
        }
        out
    }

    /// Sets `x_i = value`, keeping the number of variables.
    pub fn set_var(&self, i: usize, value: &F) -> Self {
        let mut out = Self::zero(self.nvars, &self.ctx);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            let mut k = m.clone();
            k.exps_mut()[i] = 0;
            out.add_term(k, c.clone() * value.pow(e as u64));
        }
        out
    }

    /// Drops variable `i`, which must not occur.
    pub fn remove_unused_var(&self, i: usize) -> Option<Self> {
        if self.degree_in(i) > 0 {
            return None;
        }
        Some(self.specialize(i, &F::zero(&self.ctx)))
    }

    /// Inserts a new variable at position `i` (not occurring).
    pub fn insert_var(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars + 1, &self.ctx);
        for (m, c) in &self.terms {
            let mut exps = m.exps().to_vec();
            exps.insert(i, 0);
            out.add_term(Monomial::new(&exps), c.clone());
        }
        out
    }

    /// Renames `x_i ↦ x_{perm[i]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        let mut out = Self::zero(self.nvars, &self.ctx);
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; self.nvars];
            for (i, &e) in m.exps().iter().enumerate() {
                exps[perm[i]] = e;
            }
            out.add_term(Monomial::new(&exps), c.clone());
        }
        out
    }

    /// Homogeneous part of the given degree.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self::from_terms(
            self.nvars,
            &self.ctx,
            self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Default variable names `x1, …, xn`.
    pub fn default_names(&self) -> Vec<String> {
        (1..=self.nvars).map(|i| format!("x{i}")).collect()
    }

    /// Human-readable form, largest term first.
    pub fn display_with(&self, names: &[impl AsRef<str>]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let n = names[i].as_ref();
                    if e == 1 {
                        n.to_string()
                    } else {
                        format!("{n}^{e}")
                    }
                })
                .collect();
            let cs = c.to_string();
            let simple = !cs.contains([' ', '+']) && !cs[1..].contains('-');
            let (neg, body) = if simple && cs.starts_with('-') {
                (true, cs[1..].to_string())
            } else if simple {
                (false, cs)
            } else {
                (false, format!("({cs})"))
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (mono.is_empty(), body == "1") {
                (true, _) => out.push_str(&body),
                (false, true) => out.push_str(&mono.join("*")),
                (false, false) => {
                    out.push_str(&body);
                    out.push('*');
                    out.push_str(&mono.join("*"));
                }
            }
        }
        out
    }
}

impl<F: Field> PartialEq for SparsePolynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<F: Field> Eq for SparsePolynomial<F> {}

impl<F: Field> Hash for SparsePolynomial<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.nvars.hash(state);
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl<F: Field> fmt::Debug for SparsePolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&self.default_names()))
    }
}

impl<F: Field> fmt::Display for SparsePolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&self.default_names()))
    }
}

impl<F: Field> Add for SparsePolynomial<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("arity mismatch")
    }
}

impl<F: Field> Sub for SparsePolynomial<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> Neg for SparsePolynomial<F> {
    type Output = Self;
    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl<F: Field> Mul for SparsePolynomial<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("arity mismatch")
    }
}

impl<F: Field> Ring for SparsePolynomial<F> {
    fn zero_like(&self) -> Self {
        Self::zero(self.nvars, &self.ctx)
    }
    fn one_like(&self) -> Self {
        Self::one(self.nvars, &self.ctx)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::constant(self.nvars, F::from_i64(&self.ctx, n))
    }
}
