use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use pfaffkit::exactfield::{
    CyclotomicField, CyclotomicNumber, Field, FieldDescriptor, JsonCoeff, PrimeField, PrimeFieldElement, Rational,
    ReduceModP, Reduction, Ring,
};
use pfaffkit::pfaffian::{build_family_from_subspace, FamilyFile, SkewLinearFamily};
use pfaffkit::polyring::{parse_constant, PolynomialFile, SparsePolynomial};
use pfaffkit::reptheory::{equivariant_hom_basis, GroupFile, PencilParameter};
use pfaffkit::varietylab::{
    fixed_point_weights, k3_census, reduce_family, reduce_matrix, smoothness_check, CensusOptions,
    SmoothnessOptions, DEFAULT_POWER_BOUND,
};
use pfaffkit::verifyctl::{
    export_fixture, run_suite, CheckStatus, FixtureRegistry, SuiteConfig, SuiteContext, CACHE_ENV,
};

#[derive(Parser)]
#[command(name = "pfaffkit", version, about = "Equivariant Pfaffian constructions and their verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Skew-linear families from equivariant pencils
    #[command(subcommand)]
    Pfaffian(PfaffianCmd),
    /// Smoothness certification mod p
    #[command(subcommand)]
    Smooth(SmoothCmd),
    /// Point census of the associated K3 surface
    #[command(subcommand)]
    K3(K3Cmd),
    /// Lines on X from pairs of census planes
    #[command(subcommand)]
    Lines(LinesCmd),
    /// Linearization fiber and its round trip with the kernel
    #[command(subcommand)]
    Fiber(FiberCmd),
    /// Tangent weights at fixed coordinate points
    Weights(WeightsArgs),
    /// Acceptance suite
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Writes the group, family and polynomial files of a fixture
    ExportFixture {
        /// Fixture name, e.g. agl7_cubic or dihedral_quadric:n=3,k=1
        name: String,
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
}

#[derive(Subcommand)]
enum PfaffianCmd {
    /// Builds M from the member T1 + lambda T2 of Hom_G(V, Lambda^2 V)
    Build {
        #[arg(long)]
        group: PathBuf,
        /// Pencil parameter; `inf` selects T2
        #[arg(long, default_value = "0")]
        pencil_lambda: String,
        /// Family file to write; printed to stdout otherwise
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the Pfaffian as a polynomial file
        #[arg(long)]
        pfaffian: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SmoothCmd {
    Check(SmoothArgs),
}

#[derive(Args)]
struct SmoothArgs {
    /// Polynomial file
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    poly: Option<PathBuf>,
    /// Family file; its Pfaffian is tested
    #[arg(long)]
    family: Option<PathBuf>,
    /// Value for the variable `lambda` or the family's pencil parameter
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long = "prime", default_values_t = [29u64])]
    primes: Vec<u64>,
    #[arg(long, default_value_t = DEFAULT_POWER_BOUND)]
    power_bound: u32,
    /// Group file whose elements give the singular-point search strata
    #[arg(long)]
    group: Option<PathBuf>,
}

#[derive(Subcommand)]
enum K3Cmd {
    Census {
        #[arg(long, default_value_t = 29)]
        prime: u64,
        #[arg(long, default_value = "2")]
        lambda: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Family file; the built-in cubic family otherwise
        #[arg(long)]
        family: Option<PathBuf>,
        #[arg(long, env = CACHE_ENV)]
        cache_dir: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, default_value_t = 29)]
    prime: u64,
    #[arg(long, default_value_t = 2)]
    lambda: i64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum LinesCmd {
    Sample {
        #[arg(long, default_value_t = 50)]
        pairs: usize,
        #[command(flatten)]
        common: SampleArgs,
    },
}

#[derive(Subcommand)]
enum FiberCmd {
    Roundtrip {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[command(flatten)]
        common: SampleArgs,
    },
}

#[derive(Args)]
struct WeightsArgs {
    /// Group element as a word in the generators, e.g. g or gh
    #[arg(long, default_value = "g")]
    element: String,
    #[arg(long, default_value = "2")]
    lambda: String,
    /// Report every coordinate point on X
    #[arg(long, conflicts_with = "point")]
    all_coordinate_points: bool,
    /// One coordinate point, 1-based
    #[arg(long)]
    point: Option<usize>,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Runs the acceptance checks; exit status 0 iff none fails
    PaperSuite {
        /// Check names or criterion numbers, comma separated or repeated
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long = "prime")]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// JSON report path
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = CACHE_ENV)]
        cache_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Pfaffian(PfaffianCmd::Build { group, pencil_lambda, out, pfaffian }) => {
            pfaffian_build(&group, &pencil_lambda, out.as_deref(), pfaffian.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Smooth(SmoothCmd::Check(args)) => smooth_check(&args),
        Command::K3(K3Cmd::Census { prime, lambda, samples, seed, family, cache_dir }) => {
            let opts = CensusOptions { samples, seed, lambda: Some(lambda.clone()), cache_dir };
            let report = match family {
                Some(path) => with_file_field(&path, |desc, v| census_from_file(desc, v, prime, &lambda, &opts))?,
                None => {
                    let reg = FixtureRegistry::load()?;
                    let l = parse_constant(&lambda, &reg.agl7_field(), &[("zeta", reg.agl7_field().zeta())])?;
                    let fam = reg.agl7_family()?.at_lambda(&l);
                    census_report(&fam, prime, 7, &opts)?
                }
            };
            print_json(&report);
            Ok(ExitCode::SUCCESS)
        }
        Command::Lines(LinesCmd::Sample { pairs, common }) => {
            let config = SuiteConfig { line_pairs: pairs, ..sample_config(&common) };
            run_single(config, "lines")
        }
        Command::Fiber(FiberCmd::Roundtrip { samples, common }) => {
            let config = SuiteConfig { fiber_samples: samples, ..sample_config(&common) };
            run_single(config, "round_trip")
        }
        Command::Weights(args) => {
            weights(&args)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(VerifyCmd::PaperSuite { only, primes, seed, out, cache_dir }) => {
            let mut config = SuiteConfig { only, seed, cache_dir, ..SuiteConfig::default() };
            if !primes.is_empty() {
                config.primes = primes;
            }
            let report = run_suite(config)?;
            emit(report.to_text().trim_end());
            if let Some(path) = out {
                fs::write(&path, report.to_json()).with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::ExportFixture { name, dir } => {
            fs::create_dir_all(&dir)?;
            for path in export_fixture(&name, &dir)? {
                emit(&path.display().to_string());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_json(v: &Value) {
    emit(&serde_json::to_string_pretty(v).expect("serializable"));
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Dispatches on the field descriptor stored in a JSON input file.
fn with_file_field<T>(path: &Path, f: impl FnOnce(FieldDescriptor, Value) -> Result<T>) -> Result<T> {
    let v = read_json(path)?;
    let desc = match v.get("field") {
        None | Some(Value::Null) => FieldDescriptor::Rational,
        Some(d) => FieldDescriptor::from_json(d)?,
    };
    f(desc, v)
}

fn constants<F: Field>(zeta: Option<F>) -> Vec<(&'static str, F)> {
    zeta.map(|z| vec![("zeta", z)]).unwrap_or_default()
}

/// The reduction for a field with conductor `n` (1 when there is no root).
fn reduction_for(p: u64, conductor: u32) -> Result<Reduction> {
    Ok(if conductor > 1 { Reduction::with_root_of_order(p, conductor as u64)? } else { Reduction::new(p)? })
}

fn pfaffian_build(group: &Path, lambda: &str, out: Option<&Path>, pf_out: Option<&Path>) -> Result<()> {
    with_file_field(group, |desc, v| {
        let file: GroupFile = serde_json::from_value(v)?;
        match desc {
            FieldDescriptor::Rational => build_generic::<Rational>(&file, &(), None, lambda, out, pf_out),
            FieldDescriptor::Prime { p } => build_generic::<PrimeFieldElement>(&file, &PrimeField::new(p)?, None, lambda, out, pf_out),
            FieldDescriptor::Cyclotomic { conductor } => {
                let k = CyclotomicField::new(conductor)?;
                let z = k.zeta();
                build_generic::<CyclotomicNumber>(&file, &k, Some(z), lambda, out, pf_out)
            }
        }
    })
}

fn build_generic<F: JsonCoeff>(
    file: &GroupFile,
    ctx: &F::Context,
    zeta: Option<F>,
    lambda: &str,
    out: Option<&Path>,
    pf_out: Option<&Path>,
) -> Result<()> {
    let v = file.enumerate::<F>(ctx)?;
    let w = v.exterior_square();
    let pencil = equivariant_hom_basis(&v, &w)?;
    if pencil.maps.is_empty() {
        bail!("Hom_G(V, Lambda^2 V) is zero");
    }
    let param = if lambda == "inf" {
        PencilParameter::Infinity
    } else {
        PencilParameter::Finite(parse_constant(lambda, ctx, &constants(zeta))?)
    };
    let member = pencil.member(&param)?;
    if member.degenerate {
        eprintln!("warning: pencil member has dimension {} < {}", member.subspace.dim(), v.dim());
    }
    let fam = build_family_from_subspace(&member.subspace, v.dim())?;
    let text = serde_json::to_string_pretty(&FamilyFile::from_family(&fam))?;
    match out {
        Some(path) => fs::write(path, text)?,
        None => emit(&text),
    }
    if let Some(path) = pf_out {
        let pf = PolynomialFile::from_polynomial(&fam.pfaffian(), None);
        fs::write(path, serde_json::to_string_pretty(&pf)?)?;
    }
    eprintln!("hom dimension {}, member dimension {}", pencil.maps.len(), member.subspace.dim());
    Ok(())
}

fn smooth_check(args: &SmoothArgs) -> Result<ExitCode> {
    let path = args.poly.as_ref().or(args.family.as_ref()).expect("clap requires one input");
    let verdicts = with_file_field(path, |desc, v| match desc {
        FieldDescriptor::Rational => smooth_generic::<Rational>(args, v, &(), None, 1),
        FieldDescriptor::Prime { p } => smooth_generic::<PrimeFieldElement>(args, v, &PrimeField::new(p)?, None, 1),
        FieldDescriptor::Cyclotomic { conductor } => {
            let k = CyclotomicField::new(conductor)?;
            let z = k.zeta();
            smooth_generic::<CyclotomicNumber>(args, v, &k, Some(z), conductor)
        }
    })?;
    print_json(&verdicts);
    Ok(ExitCode::SUCCESS)
}

fn smooth_generic<F: JsonCoeff + ReduceModP>(
    args: &SmoothArgs,
    v: Value,
    ctx: &F::Context,
    zeta: Option<F>,
    conductor: u32,
) -> Result<Value> {
    let consts = constants(zeta);
    let lambda = args.lambda.as_deref().map(|s| parse_constant(s, ctx, &consts)).transpose()?;
    let f: SparsePolynomial<F> = if args.poly.is_some() {
        let file: PolynomialFile = serde_json::from_value(v)?;
        let mut f = file.to_polynomial::<F>(ctx)?;
        let lambda_idx = file.vars.as_ref().and_then(|vars| vars.iter().position(|n| n == "lambda"));
        match (lambda_idx, &lambda) {
            (Some(i), Some(l)) => f = f.specialize(i, l),
            (Some(_), None) => bail!("the polynomial has a variable `lambda`; pass --lambda"),
            (None, Some(_)) => bail!("--lambda given but the polynomial has no variable `lambda`"),
            (None, None) => {}
        }
        f
    } else {
        let file: FamilyFile = serde_json::from_value(v)?;
        let fam = file.to_family::<F>(ctx)?;
        match (&lambda, fam.has_lambda()) {
            (Some(l), true) => fam.at_lambda(l).pfaffian(),
            (None, false) => fam.pfaffian(),
            (None, true) => bail!("the family has a pencil parameter; pass --lambda"),
            (Some(_), false) => bail!("--lambda given but the family has no pencil parameter"),
        }
    };
    let group = match &args.group {
        Some(path) => {
            let file: GroupFile = serde_json::from_value(read_json(path)?)?;
            Some(file.enumerate::<F>(ctx)?)
        }
        None => None,
    };
    let mut out = Vec::new();
    for &p in &args.primes {
        let r = reduction_for(p, conductor)?;
        let strata = match &group {
            Some(g) => g.matrices().iter().map(|m| reduce_matrix(m, &r)).collect::<Result<Vec<_>, _>>()?,
            None => Vec::new(),
        };
        let opts = SmoothnessOptions { power_bound: args.power_bound, strata, ..Default::default() };
        let verdict = smoothness_check(&f, &r, &opts)?;
        let mut v = serde_json::to_value(&verdict)?;
        if let Some(w) = &verdict.witness {
            v["witness_text"] = json!(w.to_string());
        }
        out.push(v);
    }
    Ok(Value::Array(out))
}

fn census_from_file(desc: FieldDescriptor, v: Value, p: u64, lambda: &str, opts: &CensusOptions) -> Result<Value> {
    let file: FamilyFile = serde_json::from_value(v)?;
    match desc {
        FieldDescriptor::Rational => {
            let fam = specialize_family(file.to_family::<Rational>(&())?, lambda, &(), None)?;
            census_report(&fam, p, 1, opts)
        }
        FieldDescriptor::Prime { p: q } => {
            if q != p {
                bail!("family is over GF({q}) but --prime is {p}");
            }
            let k = PrimeField::new(q)?;
            let fam = specialize_family(file.to_family::<PrimeFieldElement>(&k)?, lambda, &k, None)?;
            census_report(&fam, p, 1, opts)
        }
        FieldDescriptor::Cyclotomic { conductor } => {
            let k = CyclotomicField::new(conductor)?;
            let z = k.zeta();
            let fam = specialize_family(file.to_family::<CyclotomicNumber>(&k)?, lambda, &k, Some(z))?;
            census_report(&fam, p, conductor, opts)
        }
    }
}

fn specialize_family<F: JsonCoeff>(
    fam: SkewLinearFamily<F>,
    lambda: &str,
    ctx: &F::Context,
    zeta: Option<F>,
) -> Result<SkewLinearFamily<F>> {
    if !fam.has_lambda() {
        return Ok(fam);
    }
    let l = parse_constant(lambda, ctx, &constants(zeta))?;
    Ok(fam.at_lambda(&l))
}

fn census_report<F: Field + ReduceModP>(fam: &SkewLinearFamily<F>, p: u64, conductor: u32, opts: &CensusOptions) -> Result<Value> {
    let r = reduction_for(p, conductor)?;
    let fam = reduce_family(fam, &r)?;
    let census = k3_census(&fam, opts)?;
    if census.from_cache {
        eprintln!("census read from cache");
    }
    Ok(census.report())
}

fn sample_config(common: &SampleArgs) -> SuiteConfig {
    SuiteConfig {
        primes: vec![common.prime],
        seed: common.seed,
        census_lambda: common.lambda,
        cache_dir: common.cache_dir.clone(),
        ..SuiteConfig::default()
    }
}

fn run_single(config: SuiteConfig, check: &str) -> Result<ExitCode> {
    let ctx = SuiteContext::new(config)?;
    let result = ctx.run_named(check)?;
    print_json(&serde_json::to_value(&result)?);
    Ok(if result.status == CheckStatus::Fail { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}

fn weights(args: &WeightsArgs) -> Result<()> {
    let reg = FixtureRegistry::load()?;
    let k = reg.agl7_field();
    let v = reg.agl7_group()?;
    let idx = (0..v.order())
        .find(|&i| v.tables().word_string(i) == args.element)
        .with_context(|| format!("no group element with word {}; known: {}", args.element, v.tables().all_words().join(" ")))?;
    let m = v.matrix(idx);
    let mut exponents = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i != j && !m[(i, j)].is_zero() {
                bail!("element {} is not diagonal", args.element);
            }
        }
        let a = (0..7).find(|&a| m[(i, i)] == k.zeta_pow(a)).context("diagonal entry is not a 7th root of unity")?;
        exponents.push(a as u64);
    }
    let lambda = parse_constant(&args.lambda, &k, &[("zeta", k.zeta())])?;
    let f = reg.agl7_cubic_at(&lambda)?;
    let mut points = fixed_point_weights(&exponents, 7, &f)?;
    if !args.all_coordinate_points {
        let i = args.point.context("pass --point i or --all-coordinate-points")?;
        points.retain(|w| w.point + 1 == i);
        if points.is_empty() {
            bail!("e{i} is not a point of X");
        }
    }
    print_json(&json!({
        "element": args.element,
        "exponents": exponents,
        "order": 7,
        "lambda": lambda.to_string(),
        "points": points,
    }));
    Ok(())
}
