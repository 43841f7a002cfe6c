use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::fixtures::FIXTURE_NAMES;
use super::{FixtureRegistry, VerifyError};
use crate::exactfield::{JsonCoeff, Rational};
use crate::linalg::Matrix;
use crate::pfaffian::FamilyFile;
use crate::polyring::{PolynomialFile, SparsePolynomial};
use crate::reptheory::GroupFile;

/// A registered fixture name with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixtureSpec {
    Plain(String),
    Dihedral { n: u32, k: u32 },
}

/// Accepts `name` or `dihedral_quadric:n=<n>[,k=<k>]`.
pub fn parse_fixture_name(name: &str, reg: &FixtureRegistry) -> Result<FixtureSpec, VerifyError> {
    let (base, params) = name.split_once(':').unwrap_or((name, ""));
    if !FIXTURE_NAMES.contains(&base) {
        return Err(VerifyError::UnknownFixture(name.into()));
    }
    if base != "dihedral_quadric" {
        if !params.is_empty() {
            return Err(VerifyError::UnknownFixture(name.into()));
        }
        return Ok(FixtureSpec::Plain(base.into()));
    }
    let (mut n, mut k) = reg.dihedral_defaults()?;
    for kv in params.split(',').filter(|s| !s.is_empty()) {
        let bad = || VerifyError::UnknownFixture(name.to_string());
        let (key, value) = kv.split_once('=').ok_or_else(bad)?;
        let value: u32 = value.trim().parse().map_err(|_| bad())?;
        match key.trim() {
            "n" => n = value,
            "k" => k = value,
            _ => return Err(bad()),
        }
    }
    Ok(FixtureSpec::Dihedral { n, k })
}

fn write_json<T: Serialize>(dir: &Path, file: &str, value: &T) -> Result<PathBuf, VerifyError> {
    let path = dir.join(file);
    let text = serde_json::to_string_pretty(value).expect("fixture files serialize");
    fs::write(&path, text + "\n")?;
    Ok(path)
}

fn poly_file<F: JsonCoeff>(f: &SparsePolynomial<F>, vars: &[String]) -> PolynomialFile {
    PolynomialFile::from_polynomial(f, Some(vars.to_vec()))
}

/// Writes the group, family and polynomial files of a fixture and returns
/// their paths.
pub fn export_fixture(name: &str, dir: &Path) -> Result<Vec<PathBuf>, VerifyError> {
    let reg = FixtureRegistry::load()?;
    let spec = parse_fixture_name(name, &reg)?;
    fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    match spec {
        FixtureSpec::Plain(base) if base == "agl7_cubic" => {
            let g = reg.agl7_group()?;
            let k = reg.agl7_field();
            let gens: Vec<Matrix<_>> = (0..2).map(|i| g.generator_matrix(i).clone()).collect();
            out.push(write_json(dir, "agl7_cubic_group.json", &GroupFile::from_matrices(&k, &gens, &["g", "h"]))?);
            out.push(write_json(dir, "agl7_cubic_family.json", &FamilyFile::from_family(&reg.agl7_family()?))?);
            out.push(write_json(dir, "agl7_cubic_cubic.json", &poly_file(&reg.agl7_cubic()?, &reg.agl7_vars()?))?);
        }
        FixtureSpec::Dihedral { n, k } => {
            let d = reg.dihedral(n, k)?;
            let base = format!("dihedral_quadric_n{n}_k{k}");
            let gens: Vec<Matrix<_>> = (0..2).map(|i| d.v.generator_matrix(i).clone()).collect();
            out.push(write_json(dir, &format!("{base}_group.json"), &GroupFile::from_matrices(&d.field, &gens, &["r", "s"]))?);
            out.push(write_json(dir, &format!("{base}_family.json"), &FamilyFile::from_family(&d.family))?);
            let vars: Vec<String> = ["x11", "x12", "x21", "x22"].iter().map(|s| s.to_string()).collect();
            out.push(write_json(dir, &format!("{base}_quadric.json"), &poly_file(&d.family.pfaffian(), &vars))?);
        }
        FixtureSpec::Plain(base) if base == "segre_substitution" => {
            let s = reg.segre()?;
            let z: Vec<String> = (1..=6).map(|i| format!("z{i}")).collect();
            out.push(write_json(dir, "segre_substitution_fermat.json", &poly_file(&s.restricted_fermat(), &z))?);
            out.push(write_json(dir, "segre_substitution_image.json", &poly_file(&s.restricted_image, &s.rest_vars))?);
            let m = s.substitution.matrix();
            out.push(write_json(
                dir,
                "segre_substitution_matrix.json",
                &GroupFile::from_matrices(&s.field, std::slice::from_ref(m), &["fourier"]),
            )?);
        }
        FixtureSpec::Plain(base) => {
            let f = reg.agl_permutation(&base)?;
            let gens: Vec<Matrix<_>> = f.generators.iter().map(|g| g.to_substitution::<Rational>(&()).matrix().clone()).collect();
            out.push(write_json(dir, &format!("{base}_group.json"), &GroupFile::from_matrices(&(), &gens, &["t", "m"]))?);
            for (i, e) in f.equations.iter().enumerate() {
                out.push(write_json(dir, &format!("{base}_equation{}.json", i + 1), &poly_file(e, &f.vars))?);
            }
        }
    }
    Ok(out)
}
