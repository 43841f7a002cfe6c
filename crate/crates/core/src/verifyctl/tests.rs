use super::*;

const RAW: &str = include_str!("../../fixtures/transcriptions.json");

fn ctx() -> SuiteContext {
    SuiteContext::new(SuiteConfig {
        cache_dir: None,
        ..SuiteConfig::default()
    })
    .unwrap()
}

#[test]
fn fixture_checksum_matches_content() {
    let reg = FixtureRegistry::load().unwrap();
    let doc: serde_json::Value = serde_json::from_str(RAW).unwrap();
    assert_eq!(reg.checksum(), content_hash(&doc["fixtures"]));
    assert_eq!(reg.checksum().len(), 64);
}

#[test]
fn canonical_json_sorts_keys() {
    let a: serde_json::Value = serde_json::from_str(r#"{"b":1,"a":{"d":[1,2],"c":"x"}}"#).unwrap();
    assert_eq!(canonical_json(&a), r#"{"a":{"c":"x","d":[1,2]},"b":1}"#);
}

#[test]
fn corrupt_fixture_is_rejected() {
    let tampered = RAW.replacen("\"2\"", "\"3\"", 1);
    assert_ne!(tampered, RAW);
    assert!(matches!(FixtureRegistry::parse(&tampered), Err(VerifyError::FixtureCorrupt(_))));
    assert!(matches!(FixtureRegistry::parse("{"), Err(VerifyError::FixtureCorrupt(_))));
}

#[test]
fn display_defects_are_in_row_four() {
    let reg = FixtureRegistry::load().unwrap();
    let defects = reg.agl7_display_defects().unwrap();
    assert_eq!(defects, vec![(4, 2), (4, 3)]);
}

#[test]
fn cubic_has_even_lambda_powers() {
    let reg = FixtureRegistry::load().unwrap();
    let f = reg.agl7_cubic().unwrap();
    assert!(substitute_square(&f, f.nvars() - 1, &q7(2)).is_some());
}

#[test]
fn export_writes_expected_files() {
    let dir = tempfile::tempdir().unwrap();
    let files = export_fixture("agl7_cubic", dir.path()).unwrap();
    assert_eq!(files.len(), 3);
    for f in &files {
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(f).unwrap()).unwrap();
        assert!(v.is_object());
    }
    let files = export_fixture("dihedral_quadric:n=3,k=1", dir.path()).unwrap();
    assert!(files.iter().any(|f| f.ends_with("dihedral_quadric_n3_k1_quadric.json")));
    for name in FIXTURE_NAMES {
        assert!(!export_fixture(name, dir.path()).unwrap().is_empty(), "{name}");
    }
    assert!(matches!(export_fixture("nosuch", dir.path()), Err(VerifyError::UnknownFixture(_))));
}

#[test]
fn fixture_name_parsing() {
    let reg = FixtureRegistry::load().unwrap();
    assert_eq!(
        parse_fixture_name("dihedral_quadric:n=5,k=2", &reg).unwrap(),
        FixtureSpec::Dihedral { n: 5, k: 2 }
    );
    assert!(parse_fixture_name("dihedral_quadric:n=x", &reg).is_err());
}

#[test]
fn prime_without_seventh_roots_is_a_config_error() {
    let cfg = SuiteConfig {
        primes: vec![13],
        ..SuiteConfig::default()
    };
    assert!(matches!(run_suite(cfg), Err(VerifyError::Config(_))));
}

#[test]
fn unknown_check_is_rejected() {
    let cfg = SuiteConfig {
        only: vec!["nosuch".into()],
        ..SuiteConfig::default()
    };
    assert!(matches!(run_suite(cfg), Err(VerifyError::UnknownCheck(_))));
}

#[test]
fn only_runs_selected_checks() {
    let cfg = SuiteConfig {
        only: vec!["segre".into(), "12".into()],
        cache_dir: None,
        ..SuiteConfig::default()
    };
    let report = run_suite(cfg).unwrap();
    let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, ["segre", "degree_profile"]);
    assert!(report.passed(), "{}", report.to_text());
}

#[test]
fn checks_have_unique_names_and_criteria() {
    assert_eq!(CHECKS.len(), 14);
    for (i, c) in CHECKS.iter().enumerate() {
        assert_eq!(c.criterion as usize, i + 1);
        assert_eq!(CHECKS.iter().filter(|d| d.name == c.name).count(), 1);
    }
}

#[test]
fn algebraic_checks_pass() {
    let ctx = ctx();
    for name in [
        "pfaffian_identity",
        "pf_squared_det",
        "multiplicity",
        "segre",
        "degree_profile",
        "fixed_point_weights",
    ] {
        let r = ctx.run_named(name).unwrap();
        assert_eq!(r.status, CheckStatus::Pass, "{name}: {}", r.detail);
    }
}

#[test]
fn report_is_deterministic() {
    let run = || {
        run_suite(SuiteConfig {
            only: vec!["pencil".into(), "semi_invariance".into()],
            cache_dir: None,
            ..SuiteConfig::default()
        })
        .unwrap()
        .without_timings()
        .to_json()
    };
    assert_eq!(run(), run());
}

#[test]
fn q7_is_an_embedding() {
    let k = FixtureRegistry::load().unwrap().agl7_field();
    assert_eq!(q7(3), k.from_i64(3));
}


