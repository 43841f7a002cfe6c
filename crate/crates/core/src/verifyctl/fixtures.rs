use serde_json::Value;
use sha2::{Digest, Sha256};

use super::VerifyError;
use crate::exactfield::{
    int, CyclotomicField, CyclotomicNumber, ExtensionField, Field, Rational,
};
use crate::linalg::Matrix;
use crate::pfaffian::SkewLinearFamily;
use crate::polyring::{parse_polynomial, LinearSubstitution, Monomial, SignedPermutation, SparsePolynomial};
use crate::reptheory::{enumerate_group, MatrixRepresentation, DEFAULT_ELEMENT_CAP};

const EMBEDDED: &str = include_str!("../../fixtures/transcriptions.json");

/// Registered fixture names; `dihedral_quadric` accepts `:n=<n>` and `,k=<k>`.
pub const FIXTURE_NAMES: &[&str] = &[
    "agl7_cubic",
    "dihedral_quadric",
    "agl5_quadric",
    "agl8_quadric",
    "agl8_fivefold",
    "agl9_quartic",
    "segre_substitution",
];

/// Serializes with recursively sorted keys and no whitespace.
pub fn canonical_json(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            let body: Vec<String> = keys
                .iter()
                .map(|k| format!("{}:{}", Value::String((*k).clone()), canonical_json(&map[*k])))
                .collect();
            format!("{{{}}}", body.join(","))
        }
        Value::Array(items) => format!("[{}]", items.iter().map(canonical_json).collect::<Vec<_>>().join(",")),
        other => other.to_string(),
    }
}

pub fn content_hash(v: &Value) -> String {
    hex::encode(Sha256::digest(canonical_json(v).as_bytes()))
}

/// The transcribed fixtures with their stored checksum.
#[derive(Clone, Debug)]
pub struct FixtureRegistry {
    schema_version: u64,
    checksum: String,
    fixtures: Value,
}

impl FixtureRegistry {
    pub fn load() -> Result<Self, VerifyError> {
        Self::parse(EMBEDDED)
    }

    pub fn parse(text: &str) -> Result<Self, VerifyError> {
        let doc: Value = serde_json::from_str(text).map_err(|e| VerifyError::FixtureCorrupt(e.to_string()))?;
        let stored = doc["checksum"]
            .as_str()
            .ok_or_else(|| VerifyError::FixtureCorrupt("missing checksum".into()))?
            .to_string();
        let fixtures = doc["fixtures"].clone();
        let actual = content_hash(&fixtures);
        if actual != stored {
            return Err(VerifyError::FixtureCorrupt(format!("checksum {actual} differs from stored {stored}")));
        }
        for name in FIXTURE_NAMES {
            if fixtures.get(name).is_none() {
                return Err(VerifyError::FixtureCorrupt(format!("missing fixture {name}")));
            }
        }
        Ok(FixtureRegistry {
            schema_version: doc["schema_version"].as_u64().unwrap_or(0),
            checksum: stored,
            fixtures,
        })
    }

    pub fn schema_version(&self) -> u64 {
        self.schema_version
    }

    pub fn checksum(&self) -> &str {
        &self.checksum
    }

    pub fn raw(&self, name: &str) -> Result<&Value, VerifyError> {
        self.fixtures.get(name).ok_or_else(|| VerifyError::UnknownFixture(name.into()))
    }

    fn str_field(&self, name: &str, key: &str) -> Result<&str, VerifyError> {
        self.raw(name)?[key]
            .as_str()
            .ok_or_else(|| VerifyError::FixtureCorrupt(format!("{name}.{key}")))
    }

    fn str_list(&self, name: &str, key: &str) -> Result<Vec<String>, VerifyError> {
        self.raw(name)?[key]
            .as_array()
            .and_then(|a| a.iter().map(|v| v.as_str().map(String::from)).collect::<Option<Vec<_>>>())
            .ok_or_else(|| VerifyError::FixtureCorrupt(format!("{name}.{key}")))
    }

    fn matrix_strings(&self, name: &str) -> Result<Vec<Vec<String>>, VerifyError> {
        self.raw(name)?["matrix"]
            .as_array()
            .and_then(|rows| {
                rows.iter()
                    .map(|r| r.as_array()?.iter().map(|v| v.as_str().map(String::from)).collect())
                    .collect::<Option<Vec<Vec<String>>>>()
            })
            .ok_or_else(|| VerifyError::FixtureCorrupt(format!("{name}.matrix")))
    }

    fn u64_field(&self, name: &str, key: &str) -> Result<u64, VerifyError> {
        self.raw(name)?[key]
            .as_u64()
            .ok_or_else(|| VerifyError::FixtureCorrupt(format!("{name}.{key}")))
    }

    // ---- AGL1(F7) ----

    pub fn agl7_field(&self) -> CyclotomicField {
        CyclotomicField::new(7).expect("conductor 7")
    }

    pub fn agl7_vars(&self) -> Result<Vec<String>, VerifyError> {
        self.str_list("agl7_cubic", "vars")
    }

    /// The group generated by `g` and `h` acting on the `x`-coordinates.
    pub fn agl7_group(&self) -> Result<MatrixRepresentation<CyclotomicNumber>, VerifyError> {
        let k = self.agl7_field();
        let gens = &self.raw("agl7_cubic")?["generators"];
        let powers: Vec<i64> = gens["g"]["diagonal_zeta_powers"]
            .as_array()
            .and_then(|a| a.iter().map(Value::as_i64).collect())
            .ok_or_else(|| VerifyError::FixtureCorrupt("agl7_cubic.generators.g".into()))?;
        let shift = &gens["h"]["signed_shift"];
        let (s, sign) = (
            shift["shift"].as_u64().unwrap_or(1) as usize,
            shift["sign"].as_i64().unwrap_or(-1),
        );
        let n = powers.len();
        let g = Matrix::diagonal(&powers.iter().map(|&a| k.zeta_pow(a)).collect::<Vec<_>>());
        let h = Matrix::from_fn(n, n, &k.zero(), |i, j| if j == (i + s) % n { k.from_i64(sign) } else { k.zero() });
        Ok(enumerate_group(&[g, h], &["g", "h"], &k, DEFAULT_ELEMENT_CAP)?)
    }

    /// The family `M_λ` built from the authoritative upper triangle.
    pub fn agl7_family(&self) -> Result<SkewLinearFamily<CyclotomicNumber>, VerifyError> {
        let k = self.agl7_field();
        let vars = self.agl7_vars()?;
        linear_family(&self.matrix_strings("agl7_cubic")?, &vars, Some(vars.len() - 1), &k)
    }

    /// Lower-triangle positions `(i, j)` (1-based) whose displayed entry is
    /// not the negative of the mirrored upper entry.
    pub fn agl7_display_defects(&self) -> Result<Vec<(usize, usize)>, VerifyError> {
        let k = self.agl7_field();
        let vars = self.agl7_vars()?;
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        let m = self.matrix_strings("agl7_cubic")?;
        let mut out = Vec::new();
        for i in 0..m.len() {
            for j in 0..i {
                let lower = parse_polynomial::<CyclotomicNumber>(&m[i][j], &names, &k, &[])?;
                let upper = parse_polynomial::<CyclotomicNumber>(&m[j][i], &names, &k, &[])?;
                if lower != -upper {
                    out.push((i + 1, j + 1));
                }
            }
        }
        Ok(out)
    }

    fn agl7_poly(&self, key: &str) -> Result<SparsePolynomial<CyclotomicNumber>, VerifyError> {
        let k = self.agl7_field();
        let vars = self.agl7_vars()?;
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        Ok(parse_polynomial(self.str_field("agl7_cubic", key)?, &names, &k, &[])?)
    }

    /// `f_λ` in the variables `x1, …, x6, λ`.
    pub fn agl7_cubic(&self) -> Result<SparsePolynomial<CyclotomicNumber>, VerifyError> {
        self.agl7_poly("cubic")
    }

    /// The displayed Pfaffian `λ · f_λ`.
    pub fn agl7_pfaffian_display(&self) -> Result<SparsePolynomial<CyclotomicNumber>, VerifyError> {
        self.agl7_poly("pfaffian")
    }

    /// `f_λ` at a fixed parameter value, in six variables.
    pub fn agl7_cubic_at(&self, lambda: &CyclotomicNumber) -> Result<SparsePolynomial<CyclotomicNumber>, VerifyError> {
        let f = self.agl7_cubic()?;
        Ok(f.specialize(f.nvars() - 1, lambda))
    }

    pub fn agl7_lambda_fixtures(&self) -> Result<Vec<CyclotomicNumber>, VerifyError> {
        let k = self.agl7_field();
        self.str_list("agl7_cubic", "lambda_fixtures")?
            .iter()
            .map(|s| Ok(parse_polynomial::<CyclotomicNumber>(s, &[], &k, &[])?.coeff(&Monomial::one(0))))
            .collect()
    }

    // ---- dihedral quadric ----

    pub fn dihedral(&self, n: u32, k: u32) -> Result<DihedralFixture, VerifyError> {
        if n < 3 {
            return Err(VerifyError::Config(format!("dihedral order parameter n = {n} must be at least 3")));
        }
        let field = CyclotomicField::new(n).map_err(VerifyError::from)?;
        let z = |e: i64| field.zeta_pow(e);
        let (o, l) = (field.one(), field.zero());
        let swap = Matrix::from_rows(vec![vec![l.clone(), o.clone()], vec![o.clone(), l.clone()]]);
        let r1 = Matrix::diagonal(&[z(1), z(-1)]);
        let r2 = Matrix::diagonal(&[z(k as i64), z(-(k as i64))]);
        let v = enumerate_group(
            &[r1.direct_sum(&r2), swap.direct_sum(&swap)],
            &["r", "s"],
            &field,
            DEFAULT_ELEMENT_CAP,
        )?;
        let w1 = v.from_generator_images(&[r1, swap.clone()])?;
        let w2 = v.from_generator_images(&[r2, swap])?;
        let l_rep = w1.tensor(&w2)?;
        let vars = self.str_list("dihedral_quadric", "vars")?;
        let family = linear_family(&self.matrix_strings("dihedral_quadric")?, &vars, None, &field)?;
        // C2 exchanging the factors: x_ij ↦ x_ji on L, block swap on V
        let sigma = SignedPermutation::permutation(vec![0, 2, 1, 3])?.to_substitution(&field);
        let tau = Matrix::from_fn(4, 4, &l, |i, j| if j == (i + 2) % 4 { o.clone() } else { l.clone() });
        Ok(DihedralFixture {
            n,
            k,
            field,
            v,
            w1,
            w2,
            l: l_rep,
            family,
            swap_sigma: sigma,
            swap_tau: tau,
        })
    }

    pub fn dihedral_defaults(&self) -> Result<(u32, u32), VerifyError> {
        Ok((
            self.u64_field("dihedral_quadric", "default_n")? as u32,
            self.u64_field("dihedral_quadric", "default_k")? as u32,
        ))
    }

    // ---- AGL1(F_q) permutation examples ----

    pub fn agl_permutation(&self, name: &str) -> Result<PermutationFixture, VerifyError> {
        if !name.starts_with("agl") || name == "agl7_cubic" {
            return Err(VerifyError::UnknownFixture(name.into()));
        }
        let q = self.u64_field(name, "q")?;
        let vars = self.str_list(name, "vars")?;
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        let equations = self
            .str_list(name, "equations")?
            .iter()
            .map(|s| parse_polynomial::<Rational>(s, &names, &(), &[]))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PermutationFixture {
            name: name.into(),
            q,
            vars,
            equations,
            generators: agl_generators(q)?,
        })
    }

    // ---- symmetric cubic and the Fourier substitution ----

    pub fn segre(&self) -> Result<SegreFixture, VerifyError> {
        let name = "segre_substitution";
        let n = self.u64_field(name, "conductor")? as u32;
        let field = CyclotomicField::new(n).map_err(VerifyError::from)?;
        let zv = self.str_list(name, "z_vars")?;
        let xv = self.str_list(name, "x_vars")?;
        let zn: Vec<&str> = zv.iter().map(String::as_str).collect();
        let xn: Vec<&str> = xv.iter().map(String::as_str).collect();
        let cubic = parse_polynomial(self.str_field(name, "cubic")?, &zn, &field, &[])?;
        let hyperplane = parse_polynomial(self.str_field(name, "hyperplane")?, &zn, &field, &[])?;
        let hyperplane_image = parse_polynomial(self.str_field(name, "hyperplane_image")?, &xn, &field, &[])?;
        let restrict = self.str_field(name, "restriction")?;
        let restrict_index = xn
            .iter()
            .position(|v| *v == restrict)
            .ok_or_else(|| VerifyError::FixtureCorrupt(format!("{name}.restriction")))?;
        let rest: Vec<&str> = xn.iter().enumerate().filter(|(i, _)| *i != restrict_index).map(|(_, v)| *v).collect();
        let restricted_image = parse_polynomial(self.str_field(name, "restricted_image")?, &rest, &field, &[])?;
        let relabel: Vec<(String, String)> = self.raw(name)?["relabel"]
            .as_array()
            .and_then(|a| {
                a.iter()
                    .map(|p| Some((p[0].as_str()?.to_string(), p[1].as_str()?.to_string())))
                    .collect()
            })
            .ok_or_else(|| VerifyError::FixtureCorrupt(format!("{name}.relabel")))?;
        // x_i ↦ Σ_j ζ^{ij} x_j
        let m = zn.len();
        let matrix = Matrix::from_fn(m, m, &field.zero(), |i, j| field.zeta_pow((i * j) as i64));
        let substitution = LinearSubstitution::new(matrix, Some("fourier"))?;
        let lambda_squared = parse_polynomial::<CyclotomicNumber>(self.str_field(name, "lambda_squared")?, &[], &field, &[])?
            .coeff(&Monomial::one(0));
        Ok(SegreFixture {
            field,
            cubic,
            hyperplane,
            hyperplane_image,
            restrict_index,
            rest_vars: rest.iter().map(|s| s.to_string()).collect(),
            restricted_image,
            relabel,
            substitution,
            lambda_squared,
        })
    }
}

/// Splits a matrix of linear forms (optionally times a parameter) into
/// constant skew matrices; only the upper triangle is read.
fn linear_family<F: Field>(
    entries: &[Vec<String>],
    vars: &[String],
    lambda: Option<usize>,
    ctx: &F::Context,
) -> Result<SkewLinearFamily<F>, VerifyError> {
    let size = entries.len();
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let coords: Vec<usize> = (0..vars.len()).filter(|&i| Some(i) != lambda).collect();
    let zero = F::zero(ctx);
    let mut b = vec![Matrix::zeros(size, size, &zero); coords.len()];
    let mut c = vec![Matrix::zeros(size, size, &zero); coords.len()];
    for i in 0..size {
        for j in i + 1..size {
            let p = parse_polynomial::<F>(&entries[i][j], &names, ctx, &[])?;
            for (mono, coeff) in p.terms() {
                let e = mono.exps();
                let lam = lambda.map(|l| e[l]).unwrap_or(0);
                let var = coords.iter().position(|&v| e[v] == 1);
                let deg: u16 = e.iter().sum();
                let (Some(slot), true) = (var, deg == 1 + lam && lam <= 1) else {
                    return Err(VerifyError::FixtureCorrupt(format!("entry ({}, {}) is not linear", i + 1, j + 1)));
                };
                let target = if lam == 1 { &mut c[slot] } else { &mut b[slot] };
                let rows: Vec<Vec<F>> = (0..size)
                    .map(|r| {
                        (0..size)
                            .map(|s| {
                                if (r, s) == (i, j) {
                                    coeff.clone()
                                } else if (r, s) == (j, i) {
                                    -coeff.clone()
                                } else {
                                    zero.clone()
                                }
                            })
                            .collect()
                    })
                    .collect();
                *target = target.add(&Matrix::from_rows(rows));
            }
        }
    }
    let lam = lambda.map(|_| c);
    Ok(SkewLinearFamily::new(size, ctx, b, lam)?)
}

/// Generators of AGL1(F_q) acting on the coordinates of the `q`- or
/// `(q−1)`-variable examples: translation by 1 and multiplication by the
/// primitive element. For `q = 8` the variables are indexed by `F_8^*` and
/// translation by `b` acts by the signs `(−1)^{Tr(cb)}`.
pub fn agl_generators(q: u64) -> Result<Vec<SignedPermutation>, VerifyError> {
    let (p, k) = match q {
        5 => (5, 1),
        8 => (2, 3),
        9 => (3, 2),
        _ => return Err(VerifyError::Config(format!("no AGL1 fixture for q = {q}"))),
    };
    let f = ExtensionField::new(p, k)?;
    let a = f.primitive_element();
    if q == 8 {
        let idx: Vec<u64> = (1..q).collect();
        let pos = |e: u64| idx.iter().position(|&i| i == e).expect("nonzero");
        let ainv = a.inv().expect("nonzero");
        let mult = SignedPermutation::permutation(
            idx.iter().map(|&c| pos((f.element(c) * ainv).index())).collect(),
        )?;
        let one = f.one();
        let trans = SignedPermutation::new(
            (0..idx.len()).collect(),
            idx.iter().map(|&c| (f.element(c) * one).trace().value() == 1).collect(),
        )?;
        return Ok(vec![trans, mult]);
    }
    let trans = SignedPermutation::permutation((0..q).map(|c| (f.element(c) + f.one()).index() as usize).collect())?;
    let mult = SignedPermutation::permutation((0..q).map(|c| (f.element(c) * a).index() as usize).collect())?;
    Ok(vec![trans, mult])
}

pub struct DihedralFixture {
    pub n: u32,
    pub k: u32,
    pub field: CyclotomicField,
    /// `V = W' ⊕ W''`.
    pub v: MatrixRepresentation<CyclotomicNumber>,
    pub w1: MatrixRepresentation<CyclotomicNumber>,
    pub w2: MatrixRepresentation<CyclotomicNumber>,
    /// `L = W' ⊗ W''` in the basis `x11, x12, x21, x22`.
    pub l: MatrixRepresentation<CyclotomicNumber>,
    pub family: SkewLinearFamily<CyclotomicNumber>,
    pub swap_sigma: LinearSubstitution<CyclotomicNumber>,
    pub swap_tau: Matrix<CyclotomicNumber>,
}

pub struct PermutationFixture {
    pub name: String,
    pub q: u64,
    pub vars: Vec<String>,
    pub equations: Vec<SparsePolynomial<Rational>>,
    pub generators: Vec<SignedPermutation>,
}

pub struct SegreFixture {
    pub field: CyclotomicField,
    pub cubic: SparsePolynomial<CyclotomicNumber>,
    pub hyperplane: SparsePolynomial<CyclotomicNumber>,
    pub hyperplane_image: SparsePolynomial<CyclotomicNumber>,
    pub restrict_index: usize,
    pub rest_vars: Vec<String>,
    pub restricted_image: SparsePolynomial<CyclotomicNumber>,
    /// Variable renamings `(from, to)`.
    pub relabel: Vec<(String, String)>,
    pub substitution: LinearSubstitution<CyclotomicNumber>,
    pub lambda_squared: CyclotomicNumber,
}

impl SegreFixture {
    /// `Σ z_i³` restricted to `z_0 = −(z_1 + … + z_6)`.
    pub fn restricted_fermat(&self) -> SparsePolynomial<CyclotomicNumber> {
        let m = self.cubic.nvars();
        let n = m - 1;
        let mut images = vec![SparsePolynomial::zero(n, &self.field); m];
        for i in 1..m {
            images[i] = SparsePolynomial::var(n, i - 1, &self.field);
            images[0] = images[0].clone() - images[i].clone();
        }
        self.cubic.compose(&images).expect("arity")
    }
}

/// Replaces every even power `λ^{2e}` of variable `idx` by `value^e`,
/// removing the variable; `None` if an odd power occurs.
pub fn substitute_square<F: Field>(f: &SparsePolynomial<F>, idx: usize, value: &F) -> Option<SparsePolynomial<F>> {
    let n = f.nvars();
    let mut out = SparsePolynomial::zero(n - 1, f.ctx());
    for (m, c) in f.terms() {
        let e = m.exps()[idx];
        if e % 2 == 1 {
            return None;
        }
        let mut exps: Vec<u16> = m.exps().to_vec();
        exps.remove(idx);
        out.add_term(Monomial::new(&exps), c.clone() * value.pow(e as u64 / 2));
    }
    Some(out)
}

/// Convenience: an integer constant of the Q(ζ7) field.
pub fn q7(n: i64) -> CyclotomicNumber {
    CyclotomicField::new(7).expect("conductor 7").from_rational(int(n))
}
