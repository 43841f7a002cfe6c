use std::collections::{BTreeSet, HashSet};

use super::VarietyError;
use crate::exactfield::{inv_mod, mul_mod, PrimeField, PrimeFieldElement};
use crate::polyring::{Monomial, SparsePolynomial};

/// Default cap on the number of processed critical pairs.
pub const DEFAULT_PAIR_BUDGET: usize = 1_000_000;

/// Polynomial over GF(p) with terms sorted by decreasing degrevlex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    nvars: usize,
    p: u64,
    terms: Vec<(Monomial, u64)>,
}

impl ModPoly {
    pub fn zero(nvars: usize, p: u64) -> Self {
        ModPoly { nvars, p, terms: Vec::new() }
    }

    pub fn from_sparse(f: &SparsePolynomial<PrimeFieldElement>) -> Self {
        ModPoly {
            nvars: f.nvars(),
            p: f.ctx().p(),
            terms: f.terms().rev().map(|(m, c)| (m.clone(), c.value())).collect(),
        }
    }

    pub fn to_sparse(&self) -> SparsePolynomial<PrimeFieldElement> {
        let gf = PrimeField::new(self.p).expect("prime");
        SparsePolynomial::from_terms(
            self.nvars,
            &gf,
            self.terms.iter().map(|(m, c)| (m.clone(), gf.elem(*c as i64))),
        )
    }

    pub fn monomial(m: Monomial, p: u64) -> Self {
        ModPoly { nvars: m.nvars(), p, terms: vec![(m, 1)] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> u64 {
        self.terms[0].1
    }

    pub fn monic(mut self) -> Self {
        if let Some(&(_, c)) = self.terms.first() {
            let inv = inv_mod(c, self.p);
            for t in &mut self.terms {
                t.1 = mul_mod(t.1, inv, self.p);
            }
        }
        self
    }

    /// `self − c · m · other`.
    fn sub_scaled(&self, c: u64, m: &Monomial, other: &ModPoly) -> ModPoly {
        let p = self.p;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(k, v)| (k.mul(m), mul_mod(*v, c, p))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (k, v) = b.next().unwrap();
                    out.push((k, (p - v) % p));
                }
                (Some((ka, va)), Some((kb, vb))) => match ka.cmp(kb) {
                    std::cmp::Ordering::Greater => out.push(a.next().unwrap().clone()),
                    std::cmp::Ordering::Less => {
                        let (k, v) = b.next().unwrap();
                        out.push((k, (p - v) % p));
                    }
                    std::cmp::Ordering::Equal => {
                        let v = (va + p - vb) % p;
                        if v != 0 {
                            out.push((ka.clone(), v));
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
        out.retain(|t| t.1 != 0);
        ModPoly { nvars: self.nvars, p, terms: out }
    }

    /// Full reduction modulo `basis`.
    pub fn normal_form(&self, basis: &[ModPoly]) -> ModPoly {
        let p = self.p;
        let mut g = self.clone();
        let mut rem: Vec<(Monomial, u64)> = Vec::new();
        while !g.terms.is_empty() {
            let (lm, lc) = g.terms[0].clone();
            let divisor = basis.iter().find(|b| b.lm().divides(&lm));
            match divisor {
                Some(b) => {
                    let q = lm_quotient(b.lm(), &lm);
                    let c = mul_mod(lc, inv_mod(b.lc(), p), p);
                    g = g.sub_scaled(c, &q, b);
                }
                None => {
                    rem.push((lm, lc));
                    g.terms.remove(0);
                }
            }
        }
        ModPoly { nvars: self.nvars, p, terms: rem }
    }

    fn s_poly(&self, other: &ModPoly) -> ModPoly {
        let l = self.lm().lcm(other.lm());
        let a = ModPoly::zero(self.nvars, self.p).sub_scaled(self.p - 1, &lm_quotient(self.lm(), &l), self);
        let ca = mul_mod(1, inv_mod(self.lc(), self.p), self.p);
        let a = a.scale(ca);
        let cb = inv_mod(other.lc(), self.p);
        a.sub_scaled(cb, &lm_quotient(other.lm(), &l), other)
    }

    fn scale(mut self, c: u64) -> Self {
        for t in &mut self.terms {
            t.1 = mul_mod(t.1, c, self.p);
        }
        self.terms.retain(|t| t.1 != 0);
        self
    }
}

fn lm_quotient(divisor: &Monomial, m: &Monomial) -> Monomial {
    divisor.quotient_of(m).expect("divisibility checked")
}

/// Reduced Gröbner basis in degrevlex order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub nvars: usize,
    pub p: u64,
    pub basis: Vec<ModPoly>,
    pub pairs_processed: usize,
}

/// Buchberger's algorithm with the product and chain criteria; pairs are
/// selected by smallest lcm (normal strategy), ties by index.
pub fn buchberger(generators: &[ModPoly], budget: usize) -> Result<GroebnerBasis, VarietyError> {
    let nvars = generators.first().map(|g| g.nvars).unwrap_or(0);
    let p = generators.first().map(|g| g.p).unwrap_or(2);
    let mut g: Vec<ModPoly> = Vec::new();
    let mut queue: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut processed = 0usize;

    let add = |f: ModPoly,
               g: &mut Vec<ModPoly>,
               queue: &mut BTreeSet<(Monomial, usize, usize)>,
               pending: &mut HashSet<(usize, usize)>| {
        let j = g.len();
        for (i, gi) in g.iter().enumerate() {
            queue.insert((gi.lm().lcm(f.lm()), i, j));
            pending.insert((i, j));
        }
        g.push(f);
    };

    for f in generators {
        let r = f.normal_form(&g);
        if !r.is_zero() {
            add(r.monic(), &mut g, &mut queue, &mut pending);
        }
    }

    while let Some((lcm, i, j)) = queue.pop_first() {
        pending.remove(&(i, j));
        processed += 1;
        if processed > budget {
            return Err(VarietyError::BudgetExceeded { budget });
        }
        if g[i].lm().is_coprime(g[j].lm()) {
            continue;
        }
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && g[k].lm().divides(&lcm)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = g[i].s_poly(&g[j]);
        let r = s.normal_form(&g);
        if !r.is_zero() {
            add(r.monic(), &mut g, &mut queue, &mut pending);
        }
    }

    // minimalize
    let mut keep: Vec<ModPoly> = Vec::new();
    for (idx, f) in g.iter().enumerate() {
        let redundant = g.iter().enumerate().any(|(k, h)| {
            k != idx && h.lm().divides(f.lm()) && (h.lm() != f.lm() || k < idx)
        });
        if !redundant {
            keep.push(f.clone());
        }
    }
    // interreduce tails
    let mut reduced = Vec::with_capacity(keep.len());
    for idx in 0..keep.len() {
        let others: Vec<ModPoly> = keep.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, h)| h.clone()).collect();
        let f = &keep[idx];
        let head = ModPoly {
            nvars,
            p,
            terms: vec![f.terms[0].clone()],
        };
        let tail = ModPoly {
            nvars,
            p,
            terms: f.terms[1..].to_vec(),
        }
        .normal_form(&others);
        let mut terms = head.terms;
        terms.extend(tail.terms);
        reduced.push(ModPoly { nvars, p, terms }.monic());
    }
    reduced.sort_by(|a, b| a.lm().cmp(b.lm()));
    Ok(GroebnerBasis {
        nvars,
        p,
        basis: reduced,
        pairs_processed: processed.min(budget),
    })
}

impl GroebnerBasis {
    pub fn normal_form(&self, f: &ModPoly) -> ModPoly {
        f.normal_form(&self.basis)
    }

    pub fn contains(&self, f: &ModPoly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Every generator reduces to zero and every S-polynomial of basis
    /// pairs reduces to zero.
    pub fn verify(&self, generators: &[ModPoly]) -> bool {
        generators.iter().all(|f| self.contains(f))
            && (0..self.basis.len()).all(|i| {
                (i + 1..self.basis.len()).all(|j| self.contains(&self.basis[i].s_poly(&self.basis[j])))
            })
    }

    /// Smallest `N ≤ bound` with `x_i^N` in the ideal, if any.
    pub fn power_in_ideal(&self, i: usize, bound: u32) -> Option<u32> {
        (1..=bound).find(|&n| {
            let mut e = Monomial::one(self.nvars);
            e.exps_mut()[i] = n as u16;
            self.contains(&ModPoly::monomial(e, self.p))
        })
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.iter().any(|b| b.lm().is_one())
    }
}
