use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pfaffkit(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfaffkit"))
        .args(args)
        .current_dir(cwd)
        .env_remove("PFAFFKIT_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json_stdout(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn exported_cubic_is_smooth_at_two_primes() {
    let dir = tempfile::tempdir().unwrap();
    let out = pfaffkit(&["export-fixture", "agl7_cubic", "--dir", "."], dir.path());
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 3);
    let v = json_stdout(&pfaffkit(
        &["smooth", "check", "--poly", "agl7_cubic_cubic.json", "--lambda", "2", "--prime", "29", "--prime", "43"],
        dir.path(),
    ));
    let verdicts = v.as_array().unwrap();
    assert_eq!(verdicts.len(), 2);
    for (verdict, p) in verdicts.iter().zip([29, 43]) {
        assert_eq!(verdict["status"], "Smooth");
        assert_eq!(verdict["prime"], p);
        assert_eq!(verdict["power_bound"], 24);
    }
}

#[test]
fn family_at_lambda_one_has_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    assert!(pfaffkit(&["export-fixture", "agl7_cubic", "--dir", "."], dir.path()).status.success());
    let v = json_stdout(&pfaffkit(
        &["smooth", "check", "--family", "agl7_cubic_family.json", "--lambda", "1", "--group", "agl7_cubic_group.json"],
        dir.path(),
    ));
    assert_eq!(v[0]["status"], "SingularCertified");
    assert_eq!(v[0]["witness_text"], "(1 : 28 : 1 : 28 : 1 : 28)");
}

#[test]
fn pencil_build_gives_a_six_by_six_family() {
    let dir = tempfile::tempdir().unwrap();
    assert!(pfaffkit(&["export-fixture", "agl7_cubic", "--dir", "."], dir.path()).status.success());
    let out = pfaffkit(
        &["pfaffian", "build", "--group", "agl7_cubic_group.json", "--pencil-lambda", "2", "--out", "fam.json", "--pfaffian", "pf.json"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let fam: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("fam.json")).unwrap()).unwrap();
    assert_eq!(fam["N"], 6);
    assert_eq!(fam["B"].as_array().unwrap().len(), 6);
    let pf: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("pf.json")).unwrap()).unwrap();
    assert_eq!(pf["nvars"], 6);
    let v = json_stdout(&pfaffkit(&["smooth", "check", "--family", "fam.json"], dir.path()));
    assert_eq!(v[0]["status"], "Smooth");
}

#[test]
fn dihedral_export_is_parametrized() {
    let dir = tempfile::tempdir().unwrap();
    let out = pfaffkit(&["export-fixture", "dihedral_quadric:n=5,k=2", "--dir", "."], dir.path());
    assert!(out.status.success());
    assert!(dir.path().join("dihedral_quadric_n5_k2_quadric.json").exists());
    let out = pfaffkit(&["export-fixture", "nosuch", "--dir", "."], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown fixture"));
}

#[test]
fn weights_at_coordinate_points() {
    let dir = tempfile::tempdir().unwrap();
    let v = json_stdout(&pfaffkit(&["weights", "--element", "g", "--all-coordinate-points"], dir.path()));
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 6);
    let mut tangent: Vec<u64> = points[0]["tangent"].as_array().unwrap().iter().map(|t| t.as_u64().unwrap()).collect();
    tangent.sort_unstable();
    assert_eq!(tangent, [1, 2, 3, 5]);
    let out = pfaffkit(&["weights", "--element", "h", "--point", "1"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn suite_selection_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = pfaffkit(&["verify", "paper-suite", "--only", "segre,degree_profile", "--out", "r.json"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[PASS   ] segre"));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["checks"].as_array().unwrap().len(), 2);
    assert_eq!(report["checks"][0]["status"], "pass");
    let out = pfaffkit(&["verify", "paper-suite", "--prime", "13"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("configuration error"));
}

#[test]
fn census_cache_and_sampling() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cache = cache.to_str().unwrap();
    let first = json_stdout(&pfaffkit(&["k3", "census", "--samples", "5", "--cache-dir", cache], dir.path()));
    assert_eq!(first["n3"], 0);
    assert_eq!(first["surface_count"], first["plane_count"]);
    assert_eq!(first["weil_ok"], true);
    assert_eq!(first["samples"].as_array().unwrap().len(), 5);
    let out = pfaffkit(&["k3", "census", "--samples", "5", "--cache-dir", cache], dir.path());
    assert!(String::from_utf8_lossy(&out.stderr).contains("from cache"));
    let second = json_stdout(&out);
    assert_eq!(first, second);
    let out = pfaffkit(&["fiber", "roundtrip", "--samples", "20", "--cache-dir", cache], dir.path());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["name"], "round_trip");
    assert_eq!(v["artifacts"]["off_cubic"], 0);
    let out = pfaffkit(&["lines", "sample", "--pairs", "5", "--cache-dir", cache], dir.path());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["name"], "lines");
    assert_eq!(v["artifacts"]["lines"].as_u64().unwrap() + v["artifacts"]["failures"].as_array().unwrap().len() as u64, 5);
}
