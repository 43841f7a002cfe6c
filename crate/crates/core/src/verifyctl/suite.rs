use std::path::PathBuf;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::fixtures::{q7, substitute_square};
use super::report::{CheckResult, CheckStatus, VerificationReport, REPORT_SCHEMA_VERSION};
use super::{FixtureRegistry, VerifyError};
use crate::exactfield::{
    find_root_of_unity, working_prime, CyclotomicNumber, Field, PrimeFieldElement, Reduction, Ring,
};
use crate::linalg::Matrix;
use crate::pfaffian::{congruence_semi_invariance, determinant, kernel_at_point, pfaffian, SkewLinearFamily};
use crate::polyring::{find_equivariant_labeling, semi_invariance, LinearSubstitution, SparsePolynomial};
use crate::reptheory::{
    character, class_and_degree_profile, equivariant_hom_basis, exterior_square_character, multiplicity,
    MatrixRepresentation, PencilParameter, Subspace,
};
use crate::varietylab::{
    fixed_point_weights, generic_freeness_sample, k3_census, line_from_surface_pair, linearization_fiber,
    random_point, reduce_family, reduce_matrix, round_trip_point, sample_hypersurface_points,
    smoothness_check, CensusOptions, FiberOutcome, K3Census, SmoothnessOptions, SmoothnessStatus,
    VarietyError,
};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "PFAFFKIT_CACHE_DIR";

const PENCIL_SAMPLES: usize = 20;
const GENERICITY_THRESHOLD: f64 = 0.95;
const WEIGHT_EXPONENTS: [u64; 6] = [1, 5, 4, 6, 2, 3];
const EXPECTED_TANGENT: [u64; 4] = [1, 2, 3, 5];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Check names or criterion numbers; empty runs everything.
    pub only: Vec<String>,
    pub primes: Vec<u64>,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
    /// Integer pencil parameter of the census cubic.
    pub census_lambda: i64,
    pub census_samples: usize,
    /// Points of `X` sampled for the corank and round-trip checks.
    pub x_samples: usize,
    pub fiber_samples: usize,
    pub line_pairs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            only: Vec::new(),
            primes: vec![29, 43],
            seed: 7,
            cache_dir: std::env::var_os(CACHE_ENV).map(PathBuf::from),
            census_lambda: 2,
            census_samples: 50,
            x_samples: 500,
            fiber_samples: 200,
            line_pairs: 50,
        }
    }
}

/// Outcome of a check body: `None` for unknown.
struct Outcome {
    pass: Option<bool>,
    detail: String,
    artifacts: Value,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>, artifacts: Value) -> Self {
        Outcome {
            pass: Some(pass),
            detail: detail.into(),
            artifacts,
        }
    }
}

type Body = fn(&SuiteContext) -> Result<Outcome, VerifyError>;

/// One acceptance check.
pub struct Check {
    pub name: &'static str,
    pub criterion: u8,
    pub anchor: &'static str,
    pub budget_ms: u64,
    /// Uses the shared census geometry.
    pub geometry: bool,
    body: Body,
}

pub const CHECKS: &[Check] = &[
    Check { name: "pfaffian_identity", criterion: 1, anchor: "Its Pfaffian is given by", budget_ms: 10_000, geometry: false, body: pfaffian_identity },
    Check { name: "pf_squared_det", criterion: 2, anchor: "Pf(M)^2 = det(M)", budget_ms: 30_000, geometry: false, body: pf_squared_det },
    Check { name: "multiplicity", criterion: 3, anchor: "with multiplicity 2", budget_ms: 5_000, geometry: false, body: multiplicity_check },
    Check { name: "pencil", criterion: 4, anchor: "a P^1-worth of choices", budget_ms: 60_000, geometry: false, body: pencil },
    Check { name: "segre", criterion: 5, anchor: "f(z_0+...+z_6) = 7x_0; turns out to be equal to; with lambda^2 = 2", budget_ms: 10_000, geometry: false, body: segre },
    Check { name: "semi_invariance", criterion: 6, anchor: "also anti-invariant under the C_2", budget_ms: 60_000, geometry: false, body: semi_invariance_check },
    Check { name: "smoothness", criterion: 7, anchor: "smooth for lambda != 0, xi, sqrt(3) xi; S_7-invariant smooth cubic fourfold", budget_ms: 180_000, geometry: false, body: smoothness },
    Check { name: "kernel_genericity", criterion: 8, anchor: "dim(K_x) = 2", budget_ms: 30_000, geometry: true, body: kernel_genericity },
    Check { name: "round_trip", criterion: 9, anchor: "this is a point, by dimension count", budget_ms: 60_000, geometry: true, body: round_trip },
    Check { name: "k3_census", criterion: 10, anchor: "with associated K3 surface", budget_ms: 120_000, geometry: true, body: census_check },
    Check { name: "lines", criterion: 11, anchor: "form a line in X", budget_ms: 30_000, geometry: true, body: lines },
    Check { name: "degree_profile", criterion: 12, anchor: "no faithful 5-dimensional linear representations", budget_ms: 5_000, geometry: false, body: degree_profile },
    Check { name: "dihedral_criterion", criterion: 13, anchor: "if and only if n is odd", budget_ms: 10_000, geometry: true, body: dihedral_criterion },
    Check { name: "fixed_point_weights", criterion: 14, anchor: "the weights of the G-action on T_p X", budget_ms: 5_000, geometry: false, body: weights },
];

/// Shared state: the fixture registry and lazily built geometric data.
pub struct SuiteContext {
    pub config: SuiteConfig,
    pub registry: FixtureRegistry,
    group: OnceLock<Result<Arc<MatrixRepresentation<CyclotomicNumber>>, String>>,
    geometry: OnceLock<Result<Arc<Geometry>, String>>,
}

/// Data over GF(p) for `λ = 2` at the first configured prime.
pub struct Geometry {
    pub reduction: Reduction,
    pub family: SkewLinearFamily<PrimeFieldElement>,
    pub cubic: SparsePolynomial<PrimeFieldElement>,
    pub census: K3Census,
    pub census_ms: u64,
    /// Points of `X(GF(p))`.
    pub points: Vec<Vec<PrimeFieldElement>>,
}

fn cyclotomic_reduction(p: u64, n: u64) -> Result<Reduction, VerifyError> {
    find_root_of_unity(p, n)
        .map(Reduction::with_root)
        .map_err(|e| VerifyError::Config(format!("prime {p}: {e}")))
}

impl SuiteContext {
    pub fn new(config: SuiteConfig) -> Result<Self, VerifyError> {
        if config.primes.is_empty() {
            return Err(VerifyError::Config("at least one prime is required".into()));
        }
        for &p in &config.primes {
            cyclotomic_reduction(p, 7)?;
        }
        Ok(SuiteContext {
            registry: FixtureRegistry::load()?,
            config,
            group: OnceLock::new(),
            geometry: OnceLock::new(),
        })
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.seed.wrapping_mul(1_000_003).wrapping_add(salt))
    }

    pub fn group(&self) -> Result<Arc<MatrixRepresentation<CyclotomicNumber>>, VerifyError> {
        self.group
            .get_or_init(|| self.registry.agl7_group().map(Arc::new).map_err(|e| e.to_string()))
            .clone()
            .map_err(VerifyError::Config)
    }

    /// The census and sampled points, computed once.
    pub fn geometry(&self) -> Result<Arc<Geometry>, VerifyError> {
        self.geometry
            .get_or_init(|| self.build_geometry().map(Arc::new).map_err(|e| e.to_string()))
            .clone()
            .map_err(VerifyError::Config)
    }

    fn build_geometry(&self) -> Result<Geometry, VerifyError> {
        let p = self.config.primes[0];
        let reduction = cyclotomic_reduction(p, 7)?;
        let fam = self.registry.agl7_family()?.at_lambda(&q7(self.config.census_lambda));
        let family = reduce_family(&fam, &reduction)?;
        let cubic = family.pfaffian();
        let start = Instant::now();
        let census = k3_census(
            &family,
            &CensusOptions {
                samples: self.config.census_samples,
                seed: self.config.seed,
                lambda: Some(self.config.census_lambda.to_string()),
                cache_dir: self.config.cache_dir.clone(),
            },
        )?;
        let census_ms = start.elapsed().as_millis() as u64;
        let points = sample_hypersurface_points(&cubic, self.config.x_samples.max(self.config.fiber_samples), &mut self.rng(1));
        Ok(Geometry {
            reduction,
            family,
            cubic,
            census,
            census_ms,
            points,
        })
    }

    fn selected(&self) -> Result<Vec<&'static Check>, VerifyError> {
        if self.config.only.is_empty() {
            return Ok(CHECKS.iter().collect());
        }
        let mut out = Vec::new();
        for sel in &self.config.only {
            let hit = CHECKS
                .iter()
                .find(|c| c.name == sel || c.criterion.to_string() == *sel)
                .ok_or_else(|| VerifyError::UnknownCheck(sel.clone()))?;
            if !out.iter().any(|c: &&Check| c.name == hit.name) {
                out.push(hit);
            }
        }
        out.sort_by_key(|c| c.criterion);
        Ok(out)
    }

    pub fn run_check(&self, check: &Check) -> CheckResult {
        let start = Instant::now();
        let outcome = (check.body)(self);
        let wall_ms = start.elapsed().as_millis() as u64;
        let (status, detail, artifacts) = match outcome {
            Ok(o) => {
                let status = match o.pass {
                    Some(true) if wall_ms <= check.budget_ms => CheckStatus::Pass,
                    Some(true) => CheckStatus::Fail,
                    Some(false) => CheckStatus::Fail,
                    None => CheckStatus::Unknown,
                };
                (status, o.detail, o.artifacts)
            }
            Err(VerifyError::Variety(VarietyError::BudgetExceeded { budget })) => {
                (CheckStatus::Unknown, format!("pair budget {budget} exceeded"), Value::Null)
            }
            Err(e) => (CheckStatus::Fail, format!("error: {e}"), Value::Null),
        };
        CheckResult {
            name: check.name.into(),
            status,
            anchor: check.anchor.into(),
            wall_ms,
            budget_ms: check.budget_ms,
            detail,
            artifacts,
        }
    }

    pub fn run_named(&self, name: &str) -> Result<CheckResult, VerifyError> {
        let check = CHECKS
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| VerifyError::UnknownCheck(name.into()))?;
        Ok(self.run_check(check))
    }
}

/// Runs the selected checks; results come back in criterion order.
pub fn run_suite(config: SuiteConfig) -> Result<VerificationReport, VerifyError> {
    let ctx = SuiteContext::new(config)?;
    let checks = ctx.selected()?;
    if checks.iter().any(|c| c.geometry) {
        // built once up front so no single check is charged for it;
        // errors resurface in the checks that need it
        let _ = ctx.geometry();
    }
    let results: Vec<CheckResult> = checks.par_iter().map(|c| ctx.run_check(c)).collect();
    Ok(VerificationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        seed: ctx.config.seed,
        primes: ctx.config.primes.clone(),
        fixture_checksum: ctx.registry.checksum().into(),
        checks: results,
    })
}

fn scalar_multiple<F: Field>(a: &SparsePolynomial<F>, b: &SparsePolynomial<F>) -> Option<F> {
    let (m, c) = b.leading_term()?;
    let s = a.coeff(m).div(c)?;
    (!s.is_zero() && *a == b.scale(&s)).then_some(s)
}

fn with_fixed_last(m: &Matrix<CyclotomicNumber>) -> Matrix<CyclotomicNumber> {
    let one = m.zero_elem().one_like();
    m.direct_sum(&Matrix::identity(1, &one))
}

// ---- checks ----

fn pfaffian_identity(ctx: &SuiteContext) -> Result<Outcome, VerifyError> {
    let reg = &ctx.registry;
    let fam = reg.agl7_family()?;
    let pf = fam.pfaffian();
    let f = reg.agl7_cubic()?;
    let k = reg.agl7_field();
    let lambda = SparsePolynomial::var(f.nvars(), f.nvars() - 1, &k);
    let lf = lambda * f;
    let display = reg.agl7_pfaffian_display()?;
    let eps = if pf == lf {
        Some(1)
    } else if pf == -lf.clone() {
        Some(-1)
    } else {
        None
    };
    let defects = reg.agl7_display_defects()?;
    let display_consistent = display == lf;
    Ok(Outcome::new(
        eps.is_some() && display_consistent,
        format!("Pf(M_lambda) = {} * lambda * f_lambda", eps.map_or("?".into(), |e| e.to_string())),
        json!({
            "epsilon": eps,
            "pfaffian_terms": pf.num_terms(),
            "display_lower_triangle_defects": defects,
        }),
    ))
}

fn pf_squared_det(ctx: &SuiteContext) -> Result<Outcome, VerifyError> {
    let reg = &ctx.registry;
    let mut rows = Vec::new();
    let m = reg.agl7_family()?.symbolic();
    let ok7 = pfaffian(&m)?.pow(2) == determinant(&m);
    rows.push(json!({"family": "agl7_cubic", "holds": ok7}));
    let mut all = ok7;
    for n in [3, 4] {
        let d = reg.dihedral(n, 1)?;
        let s = d.family.symbolic();
        let ok = pfaffian(&s)?.pow(2) == determinant(&s);
        all &= ok;
        rows.push(json!({"family": format!("dihedral_quadric:n={n}"), "holds": ok}));
    }
    Ok(Outcome::new(all, "Pf^2 = det for M_lambda and the dihedral family", json!(rows)))
}

fn multiplicity_check(ctx: &SuiteContext) -> Result<Outcome, VerifyError> {
    let v = ctx.group()?;
    let chi = character(&v);
    let chi2 = exterior_square_character(&chi, v.tables());
    let direct = chi2 == character(&v.exterior_square());
    let m2 = multiplicity(&chi2, &chi)?;
    let m1 = multiplicity(&chi, &chi)?;
    Ok(Outcome::new(
        m2 == 2 && m1 == 1 && direct,
        format!("mult(Lambda^2 V, V) = {m2}, mult(V, V) = {m1}"),
        json!({"order": v.order(), "mult_ext_square": m2, "mult_self": m1, "character_formula_matches": direct}),
    ))
}

fn pencil(ctx: &SuiteContext) -> Result<Outcome, VerifyError> {
    let v = ctx.group()?;
    let w = v.exterior_square();
    let pencil = equivariant_hom_basis(&v, &w)?;
    let k = ctx.registry.agl7_field();
    let mut rng = ctx.rng(4);
    let gens: Vec<&Matrix<CyclotomicNumber>> = (0..w.tables().num_generators()).map(|i| w.generator_matrix(i)).collect();
    let mut members = Vec::new();
    let mut good = 0;
    let mut degenerate = Vec::new();
    let mut bad = 0;
    for _ in 0..PENCIL_SAMPLES {
        let coeffs: Vec<i64> = (0..3).map(|_| rng.gen_range(-5..=5)).collect();
        let lambda = k.from_i64(coeffs[0]) + k.zeta_pow(1) * k.from_i64(coeffs[1]) + k.zeta_pow(2) * k.from_i64(coeffs[2]);
        let member = pencil.member(&PencilParameter::Finite(lambda.clone()))?;
        let stable = gens.iter().all(|g| member.subspace.is_stable_under(g));
        if member.degenerate {
            degenerate.push(lambda.to_string());
        } else if stable && member.subspace.dim() == 6 {
            good += 1;
        } else {
            bad += 1;
        }
        members.push(json!({"lambda": lambda.to_string(), "dim": member.subspace.dim(), "stable": stable}));
    }
    let dim = pencil.maps.len();
    let equivariant = pencil.verify_equivariance(&v, &w);
    Ok(Outcome::new(
        dim == 2 && equivariant && bad == 0 && good > 0,
        format!("dim Hom_G(V, Lambda^2 V) = {dim}; {good}/{PENCIL_SAMPLES} members 6-dim and stable, {} degenerate", degenerate.len()),
        json!({"hom_dim": dim, "members": members, "degenerate": degenerate}),
    ))
}

fn segre(ctx: &SuiteContext) -> Result<Outcome, VerifyError> {
    let reg = &ctx.registry;
    let s = reg.segre()?;
    let forms = s.substitution.linear_forms(&s.field);
    let hyper = s.hyperplane.compose(&forms)? == s.hyperplane_image;
    let image = s.cubic.compose(&forms)?;
    let zero = s.field.zero();
    let restricted = image.specialize(s.restrict_index, &zero);
    let cubic_ok = restricted == s.restricted_image;
    // relabel the bracket and compare with f_λ at λ² = 2
    let names = &s.rest_vars;
    let mut perm: Vec<usize> = (0..names.len()).collect();
    for (from, to) in &s.relabel {
        let i = names.iter().position(|v| v == from);
        let j = names.iter().position(|v| v == to);
        if let (Some(i), Some(j)) = (i, j) {
            perm[i] = j;
        }
    }
    let relabeled = s.restricted_image.permute_vars(&perm);
    let f = reg.agl7_cubic()?;
    let target = substitute_square(&f, f.nvars() - 1, &s.lambda_squared)
        .ok_or_else(|| VerifyError::FixtureCorrupt("odd power of lambda in the cubic".into()))?;
    let scalar = scalar_multiple(&relabeled, &target);
    Ok(Outcome::new(
        hyper && cubic_ok && scalar.is_some(),
        format!(
            "hyperplane image {}, restricted cubic {}, relabeled = {} * f_lambda(lambda^2 = 2)",
            if hyper { "ok" } else { "wrong" },
            if cubic_ok { "ok" } else { "wrong" },
            scalar.as_ref().map_or("?".into(), |c| c.to_string())
        ),
        json!({"hyperplane": hyper, "restricted_cubic": cubic_ok, "scalar": scalar.map(|c| c.to_string())}),
    ))
}

fn semi_invariance_check(ctx: &SuiteContext) -> Result<Outcome, VerifyError> {
    let reg = &ctx.registry;
    let v = ctx.group()?;
    let f = reg.agl7_cubic()?;
    let fam = reg.agl7_family()?;
    let mut results = Vec::new();
    let mut all = true;
    let mut record = |name: &str, ok: bool, scalar: Option<String>| {
        all &= ok;
        results.push(json!({"case": name, "ok": ok, "scalar": scalar}));
    };
    for (i, expected) in [(0usize, 1i64), (1, -1)] {
        let a = v.generator_matrix(i);
        let sigma = LinearSubstitution::new(with_fixed_last(a), None)?;
        let r = semi_invariance(&f, &sigma)?;
        let ok = r.scalar.as_ref() == Some(&q7(expected));
        record(&format!("f_lambda under {}", v.tables().generator_names()[i]), ok, r.scalar.map(|c| c.to_string()));
        let c = congruence_semi_invariance(&fam, &sigma, a)?;
        record(
            &format!("M_lambda congruence under {}", v.tables().generator_names()[i]),
            c.holds,
            c.scalar.map(|c| c.to_string()),
        );
    }
    for n in [3, 4] {
        let d = reg.dihedral(n, 1)?;
        let c = congruence_semi_invariance(&d.family, &d.swap_sigma, &d.swap_tau)?;
        let minus_one = -d.field.one();
        record(
            &format!("dihedral n={n} under the factor swap"),
            c.scalar.as_ref() == Some(&minus_one),
            c.scalar.map(|c| c.to_string()),
        );
        for g in 0..2 {
            let sigma = LinearSubstitution::new(d.l.generator_matrix(g).clone(), None)?;
            let c = congruence_semi_invariance(&d.family, &sigma, d.v.generator_matrix(g))?;
            record(
                &format!("dihedral n={n} under {}", d.v.tables().generator_names()[g]),
                c.scalar.as_ref().is_some_and(|s| s.is_one()),
                c.scalar.map(|c| c.to_string()),
            );
        }
    }
    for name in ["agl5_quadric", "agl8_quadric", "agl9_quartic"] {
        let fx = reg.agl_permutation(name)?;
        for (e, eq) in fx.equations.iter().enumerate() {
            for (gi, g) in fx.generators.iter().enumerate() {
                let r = g.semi_invariance(eq);
                let ok = r.scalar.as_ref().is_some_and(|s| s.is_one());
                record(&format!("{name} equation {} under generator {gi}", e + 1), ok, r.scalar.map(|c| c.to_string()));
            }
        }
    }
    let fx = reg.agl_permutation("agl8_fivefold")?;
    let labeling = find_equivariant_labeling(&fx.equations[0], &fx.generators)?;
    let scalars: Option<Vec<String>> = labeling.as_ref().map(|beta| {
        fx.generators
            .iter()
            .map(|g| g.conjugate_by(beta).semi_invariance(&fx.equations[0]).scalar.map_or("?".into(), |c| c.to_string()))
            .collect()
    });
    record("agl8_fivefold labeling", labeling.is_some(), scalars.map(|s| s.join(",")));
    let failed = results.iter().filter(|r| r["ok"] == json!(false)).count();
    Ok(Outcome::new(
        all,
        format!("{} cases, {failed} failed; fivefold labeling {:?}", results.len(), labeling),
        json!({"cases": results, "agl8_labeling": labeling}),
    ))
}

fn lambda_excluded(l: &CyclotomicNumber) -> bool {
    let six = l.pow(6);
    l.is_zero() || six.is_one() || six == q7(27)
}

fn smoothness(ctx: &SuiteContext) -> Result<Outcome, VerifyError> {
    let reg = &ctx.registry;
    let v = ctx.group()?;
    let fam = reg.agl7_family()?;
    let segre = reg.segre()?;
    let fermat = segre.restricted_fermat();
    let mut rows = Vec::new();
    let mut all = true;
    let mut unknown = false;
    for lambda in reg.agl7_lambda_fixtures()? {
        let f = fam.at_lambda(&lambda).pfaffian();
        let expect_smooth = !lambda_excluded(&lambda);
        let mut statuses = Vec::new();
        for &p in &ctx.config.primes {
            let r = cyclotomic_reduction(p, 7)?;
            let strata = v.matrices().iter().map(|m| reduce_matrix(m, &r)).collect::<Result<Vec<_>, _>>()?;
            let verdict = smoothness_check(&f, &r, &SmoothnessOptions { strata, ..Default::default() })?;
            statuses.push(verdict.status);
            rows.push(json!({
                "case": format!("Pf(M_lambda), lambda = {lambda}"),
                "prime": p,
                "status": verdict.status,
                "witness": verdict.witness.as_ref().map(|w| w.to_string()),
                "exponents": verdict.exponents,
                "reason": verdict.reason,
            }));
        }
        let any_smooth = statuses.contains(&SmoothnessStatus::Smooth);
        if expect_smooth {
            all &= statuses.iter().all(|s| *s == SmoothnessStatus::Smooth);
            unknown |= statuses.contains(&SmoothnessStatus::Unknown);
        } else {
            all &= !any_smooth;
        }
        // verdicts must agree across primes
        all &= statuses.iter().all(|s| (*s == SmoothnessStatus::Smooth) == any_smooth);
    }
    for &p in &ctx.config.primes {
        let r = cyclotomic_reduction(p, 7)?;
        let verdict = smoothness_check(&fermat, &r, &SmoothnessOptions::default())?;
        all &= verdict.status == SmoothnessStatus::Smooth;
        rows.push(json!({
            "case": "sum z_i^3 on sum z_i = 0",
            "prime": p,
            "status": verdict.status,
            "exponents": verdict.exponents,
            "reason": verdict.reason,
        }));
    }
    let summary: Vec<String> = rows
        .iter()
        .map(|r| format!("{}@{}:{}", r["case"].as_str().unwrap_or(""), r["prime"], r["status"].as_str().unwrap_or("")))
        .collect();
    Ok(Outcome {
        pass: if all { Some(true) } else if unknown { None } else { Some(false) },
        detail: summary.join("; "),
        artifacts: json!(rows),
    })
}

fn kernel_genericity(ctx: &SuiteContext) -> Result<Outcome, VerifyError> {
    let geo = ctx.geometry()?;
    let mut exceptions = Vec::new();
    let mut corank2 = 0usize;
    for x in &geo.points {
        let k = kernel_at_point(&geo.family, x);
        if k.kernel.len() == 2 {
            corank2 += 1;
        } else {
            exceptions.push(json!({"x": x.iter().map(|c| c.value()).collect::<Vec<_>>(), "corank": k.kernel.len()}));
        }
    }
    let n = geo.points.len();
    let frac = corank2 as f64 / n.max(1) as f64;
    Ok(Outcome::new(
        n >= ctx.config.x_samples && frac >= GENERICITY_THRESHOLD,
        format!("{corank2}/{n} sampled points of X have corank 2"),
        json!({"prime": geo.reduction.p(), "samples": n, "corank2": corank2, "exceptions": exceptions}),
    ))
}

fn round_trip(ctx: &SuiteContext) -> Result<Outcome, VerifyError> {
    let geo = ctx.geometry()?;
    let samples = ctx.config.fiber_samples;
    let field = geo.reduction.field;
    let mut rng = ctx.rng(9);
    let mut single = 0usize;
    let mut off_cubic = 0usize;
    let mut kernel_back = 0usize;
    let mut defects = Vec::new();
    for _ in 0..samples {
        let v = random_point(geo.family.size(), field, &mut rng);
        match linearization_fiber(&v, &geo.family)? {
            FiberOutcome::Point { x, on_cubic } => {
                single += 1;
                off_cubic += (!on_cubic) as usize;
                let x: Vec<PrimeFieldElement> = x.iter().map(|&c| field.elem(c as i64)).collect();
                let k = kernel_at_point(&geo.family, &x);
                let span = Subspace::span(&k.kernel, geo.family.size(), &field);
                kernel_back += span.contains(&v) as usize;
            }
            FiberOutcome::Defect { solution_dim } => defects.push(json!({
                "v": v.iter().map(|c| c.value()).collect::<Vec<_>>(),
                "solution_dim": solution_dim,
            })),
        }
    }
    let mut returned = 0usize;
    let mut misses = Vec::new();
    let points = &geo.points[..samples.min(geo.points.len())];
    for x in points {
        // uniform on P(K_x): redraw the zero combination
        let combo = loop {
            let c: Vec<PrimeFieldElement> = (0..2).map(|_| field.elem(rng.gen_range(0..field.p()) as i64)).collect();
            if c.iter().any(|e| !e.is_zero()) {
                break c;
            }
        };
        let rt = round_trip_point(x, &geo.family, &combo)?;
        if rt.returned {
            returned += 1;
        } else {
            misses.push(json!({"x": x.iter().map(|c| c.value()).collect::<Vec<_>>(), "rank": rt.rank, "fiber": rt.fiber}));
        }
    }
    let need = (GENERICITY_THRESHOLD * samples as f64).ceil() as usize;
    Ok(Outcome::new(
        single >= need && off_cubic == 0 && kernel_back == single && points.len() == samples && returned >= need,
        format!(
            "fiber single-valued {single}/{samples}, off X {off_cubic}, v* in K_x {kernel_back}; kernel->fiber returns x {returned}/{} (need {need})",
            points.len()
        ),
        json!({
            "prime": geo.reduction.p(),
            "single_valued": single,
            "off_cubic": off_cubic,
            "fiber_then_kernel": kernel_back,
            "defects": defects,
            "returned": returned,
            "misses": misses,
        }),
    ))
}

fn census_check(ctx: &SuiteContext) -> Result<Outcome, VerifyError> {
    let geo = ctx.geometry()?;
    let c = &geo.census;
    let p = c.p;
    let divisible = c.n3 == 0 && c.n2 % (p + 1) == 0;
    let planes_match = c.surface_count == Some(c.plane_count);
    let ok = divisible && c.weil_ok == Some(true) && planes_match && geo.census_ms <= 120_000;
    Ok(Outcome::new(
        ok,
        format!(
            "p = {p}: n2 = {}, n3 = {}, N = {:?} (|N - {}| <= {}), distinct planes {}, census {} ms{}",
            c.n2,
            c.n3,
            c.surface_count,
            1 + p * p,
            22 * p,
            c.plane_count,
            geo.census_ms,
            if c.from_cache { " (cached)" } else { "" }
        ),
        c.report(),
    ))
}

fn lines(ctx: &SuiteContext) -> Result<Outcome, VerifyError> {
    let geo = ctx.geometry()?;
    let planes = &geo.census.samples;
    let field = geo.reduction.field;
    if planes.len() < 2 {
        return Ok(Outcome::new(false, "census produced fewer than two sample planes", Value::Null));
    }
    let pairs = ctx.config.line_pairs;
    let mut rng = ctx.rng(11);
    let mut good = 0usize;
    let mut incidence_ok = 0usize;
    let mut failures = Vec::new();
    for _ in 0..pairs {
        let i = rng.gen_range(0..planes.len());
        let mut j = rng.gen_range(0..planes.len() - 1);
        if j >= i {
            j += 1;
        }
        match line_from_surface_pair(&planes[i], &planes[j], &geo.family) {
            Ok(line) if line.pf_vanishes => {
                good += 1;
                let [u1, v1] = planes[i].vectors(field);
                let [u2, v2] = planes[j].vectors(field);
                let span = Subspace::span(&[u1.clone(), v1.clone(), u2, v2], geo.family.size(), &field);
                let x = line.point(field, 1, 1);
                let m = geo.family.matrix_at(&x);
                let k = kernel_at_point(&geo.family, &x);
                let pairs_zero = crate::linalg::dot(&u1, &m.mul_vec(&v1), &field.zero()).is_zero();
                if pairs_zero && k.kernel.iter().all(|w| span.contains(w)) {
                    incidence_ok += 1;
                }
            }
            Ok(line) => failures.push(json!({"pair": [i, j], "pf_vanishes": line.pf_vanishes})),
            Err(e) => failures.push(json!({"pair": [i, j], "error": e.to_string()})),
        }
    }
    Ok(Outcome::new(
        good == pairs && incidence_ok == pairs,
        format!("{good}/{pairs} pairs give a line on X; incidence holds on {incidence_ok}"),
        json!({"lines": good, "incidence": incidence_ok, "failures": failures}),
    ))
}

fn degree_profile(ctx: &SuiteContext) -> Result<Outcome, VerifyError> {
    let v = ctx.group()?;
    let prof = class_and_degree_profile(v.tables());
    let ok = prof.order == 42 && prof.class_count == 7 && prof.linear_count == 6 && prof.degrees == Some(vec![1, 1, 1, 1, 1, 1, 6]);
    Ok(Outcome::new(
        ok,
        format!(
            "order {}, {} classes, {} linear characters, degrees {:?}",
            prof.order, prof.class_count, prof.linear_count, prof.degrees
        ),
        json!({"order": prof.order, "class_sizes": prof.class_sizes, "class_count": prof.class_count, "linear_count": prof.linear_count, "degrees": prof.degrees}),
    ))
}

fn dihedral_criterion(ctx: &SuiteContext) -> Result<Outcome, VerifyError> {
    let reg = &ctx.registry;
    let mut rows = Vec::new();
    let mut all = true;
    for n in [3u32, 4] {
        let d = reg.dihedral(n, 1)?;
        let p = working_prime(n as u64, 29, |_| true);
        let r = cyclotomic_reduction(p, n as u64)?;
        let fam = reduce_family(&d.family, &r)?;
        let quadric = fam.pfaffian();
        let points = sample_hypersurface_points(&quadric, 40, &mut ctx.rng(13 + n as u64));
        let report = generic_freeness_sample(&d.l, &r, &points)?;
        let r_squared = d.v.tables().element_of_word(&[0, 0]);
        let ok = if n % 2 == 1 {
            report.kernel.is_empty()
        } else {
            report.kernel == vec![r_squared]
        };
        all &= ok;
        rows.push(json!({
            "n": n,
            "prime": p,
            "samples": report.samples,
            "kernel": report.kernel.iter().map(|&g| d.v.tables().word_string(g)).collect::<Vec<_>>(),
            "generically_free": report.generically_free,
        }));
    }
    let geo = ctx.geometry()?;
    let v = ctx.group()?;
    let report = generic_freeness_sample(&v, &geo.reduction, &geo.points[..50.min(geo.points.len())])?;
    all &= report.generically_free;
    rows.push(json!({"group": "AGL1(F7)", "kernel": report.kernel, "generically_free": report.generically_free}));
    Ok(Outcome::new(
        all,
        rows.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("; "),
        json!(rows),
    ))
}

fn weights(ctx: &SuiteContext) -> Result<Outcome, VerifyError> {
    let reg = &ctx.registry;
    let mut rows = Vec::new();
    let mut all = true;
    for lambda in reg.agl7_lambda_fixtures()? {
        let f = reg.agl7_cubic_at(&lambda)?;
        let w = fixed_point_weights(&WEIGHT_EXPONENTS, 7, &f)?;
        let on_x = w.len() == 6;
        let e1 = w.iter().find(|p| p.point == 0);
        let mut tangent = e1.map(|p| p.tangent.clone()).unwrap_or_default();
        tangent.sort_unstable();
        // gradient oracle: evaluate the partials at e1
        let k = f.ctx().clone();
        let mut e = vec![k.zero(); 6];
        e[0] = k.one();
        let grad: Vec<bool> = f.gradient().iter().map(|d| !d.eval(&e).is_zero()).collect();
        let normal = grad.iter().position(|&b| b);
        let mut oracle: Vec<u64> = (1..6)
            .filter(|&j| Some(j) != normal)
            .map(|j| (WEIGHT_EXPONENTS[j] + 7 - WEIGHT_EXPONENTS[0]) % 7)
            .collect();
        oracle.sort_unstable();
        let ok = on_x && tangent == EXPECTED_TANGENT && oracle == tangent;
        all &= ok;
        rows.push(json!({
            "lambda": lambda.to_string(),
            "fixed_points_on_x": w.len(),
            "e1_normal": e1.and_then(|p| p.normal).map(|j| j + 1),
            "e1_tangent": tangent,
            "oracle": oracle,
        }));
    }
    Ok(Outcome::new(all, format!("tangent weights at e1 {:?} mod 7", EXPECTED_TANGENT), json!(rows)))
}
