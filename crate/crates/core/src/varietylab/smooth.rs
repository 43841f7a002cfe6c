use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::gb::{buchberger, ModPoly, DEFAULT_PAIR_BUDGET};
use super::points::{projective_points, reduce_poly};
use super::VarietyError;
use crate::exactfield::{ExtensionElement, ExtensionField, Field, PrimeFieldElement, ReduceModP, Reduction, Ring};
use crate::linalg::Matrix;
use crate::polyring::SparsePolynomial;
use crate::reptheory::Subspace;

/// Irrelevance bound: `4 ×` the usual number of variables.
pub const DEFAULT_POWER_BOUND: u32 = 24;
/// Cap on point evaluations during the singular-point search.
pub const DEFAULT_EVAL_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SmoothnessStatus {
    Smooth,
    SingularCertified,
    Unknown,
}

/// Projective point over GF(p^degree); each coordinate is its coefficient
/// vector in the basis `1, t, …` of the extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub degree: usize,
    pub modulus: Vec<u64>,
    pub coords: Vec<Vec<u64>>,
}

impl Witness {
    fn prime(x: &[PrimeFieldElement]) -> Self {
        Witness {
            degree: 1,
            modulus: Vec::new(),
            coords: x.iter().map(|c| vec![c.value()]).collect(),
        }
    }

    fn extension(x: &[ExtensionElement]) -> Self {
        let field = x[0].field();
        Witness {
            degree: field.degree(),
            modulus: field.modulus_low().to_vec(),
            coords: x.iter().map(|c| c.coeffs().to_vec()).collect(),
        }
    }

    /// Coordinates over GF(p) when the witness is rational.
    pub fn prime_coords(&self) -> Option<Vec<u64>> {
        (self.degree == 1).then(|| self.coords.iter().map(|c| c[0]).collect())
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|c| {
                let mut terms = Vec::new();
                for (i, &d) in c.iter().enumerate().rev() {
                    match (i, d) {
                        (_, 0) => {}
                        (0, _) => terms.push(d.to_string()),
                        (1, 1) => terms.push("t".into()),
                        (1, _) => terms.push(format!("{d}t")),
                        (_, 1) => terms.push(format!("t^{i}")),
                        _ => terms.push(format!("{d}t^{i}")),
                    }
                }
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            })
            .collect();
        write!(f, "({})", parts.join(" : "))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessVerdict {
    pub status: SmoothnessStatus,
    pub witness: Option<Witness>,
    pub prime: u64,
    pub power_bound: u32,
    /// Smallest `N` with `x_i^N` in the Jacobian ideal, per variable.
    pub exponents: Vec<Option<u32>>,
    pub basis_size: usize,
    pub pairs_processed: usize,
    pub evaluations: u64,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct SmoothnessOptions {
    pub power_bound: u32,
    pub pair_budget: usize,
    pub eval_budget: u64,
    /// Group elements over GF(p) whose eigenspaces are scanned for
    /// singular points.
    pub strata: Vec<Matrix<PrimeFieldElement>>,
}

impl Default for SmoothnessOptions {
    fn default() -> Self {
        SmoothnessOptions {
            power_bound: DEFAULT_POWER_BOUND,
            pair_budget: DEFAULT_PAIR_BUDGET,
            eval_budget: DEFAULT_EVAL_BUDGET,
            strata: Vec::new(),
        }
    }
}

/// Jacobian criterion mod p for a homogeneous polynomial.
pub fn smoothness_check<F: Field + ReduceModP>(
    f: &SparsePolynomial<F>,
    r: &Reduction,
    opts: &SmoothnessOptions,
) -> Result<SmoothnessVerdict, VarietyError> {
    if !f.is_homogeneous() {
        return Err(VarietyError::NotHomogeneous);
    }
    let g = reduce_poly(f, r)?;
    let n = g.nvars();
    let p = r.p();
    let mut verdict = SmoothnessVerdict {
        status: SmoothnessStatus::Unknown,
        witness: None,
        prime: p,
        power_bound: opts.power_bound,
        exponents: vec![None; n],
        basis_size: 0,
        pairs_processed: 0,
        evaluations: 0,
        reason: String::new(),
    };
    if g.is_zero() {
        let mut e1 = vec![r.field.zero(); n];
        e1[0] = r.field.one();
        verdict.status = SmoothnessStatus::SingularCertified;
        verdict.witness = Some(Witness::prime(&e1));
        verdict.reason = "reduction vanishes identically".into();
        return Ok(verdict);
    }
    let degree = g.total_degree().expect("nonzero");
    if degree as u64 % p == 0 {
        return Err(VarietyError::BadReduction { p, degree });
    }
    if n > 8 {
        return Err(VarietyError::TooManyVariables(n));
    }
    let grad = g.gradient();
    let jac: Vec<ModPoly> = grad.iter().filter(|d| !d.is_zero()).map(ModPoly::from_sparse).collect();

    match buchberger(&jac, opts.pair_budget) {
        Err(VarietyError::BudgetExceeded { budget }) => {
            verdict.reason = format!("pair budget {budget} exceeded");
        }
        Err(e) => return Err(e),
        Ok(gb) => {
            assert!(gb.contains(&ModPoly::from_sparse(&g)), "Euler relation fails");
            verdict.basis_size = gb.basis.len();
            verdict.pairs_processed = gb.pairs_processed;
            verdict.exponents = (0..n).map(|i| gb.power_in_ideal(i, opts.power_bound)).collect();
            if verdict.exponents.iter().all(Option::is_some) {
                verdict.status = SmoothnessStatus::Smooth;
                verdict.reason = "Jacobian ideal is irrelevant".into();
                return Ok(verdict);
            }
        }
    }

    let mut search = Search {
        g: &g,
        grad: &grad,
        budget: opts.eval_budget,
        used: 0,
    };
    let found = search.run(&opts.strata);
    verdict.evaluations = search.used;
    match found {
        Some(w) => {
            verdict.status = SmoothnessStatus::SingularCertified;
            verdict.reason = format!("singular point over GF({p}^{})", w.degree);
            verdict.witness = Some(w);
        }
        None => {
            if verdict.reason.is_empty() {
                verdict.reason = "Jacobian ideal not irrelevant within the power bound; no singular point found".into();
            }
        }
    }
    Ok(verdict)
}

struct Search<'a> {
    g: &'a SparsePolynomial<PrimeFieldElement>,
    grad: &'a [SparsePolynomial<PrimeFieldElement>],
    budget: u64,
    used: u64,
}

impl Search<'_> {
    fn singular_prime(&mut self, x: &[PrimeFieldElement]) -> bool {
        self.used += 1;
        self.g.eval(x).is_zero() && self.grad.iter().all(|d| d.eval(x).is_zero())
    }

    fn singular_ext(&mut self, x: &[ExtensionElement], ext: &ExtensionField) -> bool {
        self.used += 1;
        let embed = |c: &PrimeFieldElement| ext.embed(*c);
        self.g.eval_with(x, embed).is_zero() && self.grad.iter().all(|d| d.eval_with(x, embed).is_zero())
    }

    fn run(&mut self, strata: &[Matrix<PrimeFieldElement>]) -> Option<Witness> {
        let n = self.g.nvars();
        let field = self.g.ctx().clone();
        let p = field.p();

        for i in 0..n {
            let mut e = vec![field.zero(); n];
            e[i] = field.one();
            if self.singular_prime(&e) {
                return Some(Witness::prime(&e));
            }
        }

        let mut seen = HashSet::new();
        let mut spaces = Vec::new();
        for a in strata {
            for c in field.elements() {
                let shifted = a.sub(&Matrix::identity(n, &field.zero()).scale(&c));
                let k = shifted.kernel();
                if k.is_empty() {
                    continue;
                }
                let s = Subspace::span(&k, n, &field);
                if seen.insert(s.basis().to_vec()) {
                    spaces.push(s);
                }
            }
        }
        spaces.sort_by_key(|s| s.dim());
        for s in &spaces {
            let d = s.dim();
            let count = (p.pow(d as u32) - 1) / (p - 1);
            if self.used + count > self.budget {
                continue;
            }
            for coef in projective_points(d, field) {
                let mut x = vec![field.zero(); n];
                for (c, b) in coef.iter().zip(s.basis()) {
                    for (xi, bi) in x.iter_mut().zip(b) {
                        *xi = *xi + *c * *bi;
                    }
                }
                if self.singular_prime(&x) {
                    return Some(Witness::prime(&x));
                }
            }
        }

        let ext = ExtensionField::new(p, 2).expect("p is prime");
        let q = ext.order();
        let mut seen = HashSet::new();
        for a in strata {
            let a_ext = a.map(&ext.zero(), |c| ext.embed(*c));
            for c in ext.elements().filter(|c| c.to_prime().is_none()) {
                let shifted = a_ext.sub(&Matrix::identity(n, &ext.zero()).scale(&c));
                let k = shifted.kernel();
                if k.is_empty() {
                    continue;
                }
                let s = Subspace::span(&k, n, &ext);
                if !seen.insert(s.basis().to_vec()) {
                    continue;
                }
                let d = s.dim();
                let count = (q.pow(d as u32) - 1) / (q - 1);
                if self.used + count > self.budget {
                    continue;
                }
                for chart in 0..d {
                    for mut idx in 0..q.pow(chart as u32) {
                        let mut coef = vec![ext.zero(); d];
                        for cc in coef.iter_mut().take(chart) {
                            *cc = ext.element(idx % q);
                            idx /= q;
                        }
                        coef[chart] = ext.one();
                        let mut x = vec![ext.zero(); n];
                        for (cc, b) in coef.iter().zip(s.basis()) {
                            for (xi, bi) in x.iter_mut().zip(b) {
                                *xi = *xi + *cc * *bi;
                            }
                        }
                        if self.singular_ext(&x, &ext) {
                            return Some(Witness::extension(&x));
                        }
                    }
                }
            }
        }
        None
    }
}
