//! End-to-end tests of the `globalize` binary: exit codes, deterministic
//! reports, the fixture catalog against its committed files, and the topology
//! utilities.

use std::path::Path;
use std::process::{Command, Output};

use globalize_cli::catalog;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_globalize"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes_match_the_contract() {
    // 0: everything passes.
    let ok = run(&["set-action", "--fixture", "z2part"]);
    assert_eq!(ok.status.code(), Some(0));
    // 1: a mathematical failure with a witness.
    let fail = run(&["top-action", "--fixture", "counter"]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(stdout(&fail).contains("[FAIL] globalizable"));
    // 2: input errors.
    let unknown = run(&["set-action", "--fixture", "no-such-fixture"]);
    assert_eq!(unknown.status.code(), Some(2));
    let missing = run(&["set-action"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn malformed_json_reports_location_and_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"schema\": 1, \"monoid\": ").unwrap();
    let out = run(&["set-action", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line"), "stderr should locate the error: {err}");
}

#[test]
fn schema_violations_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("noschema.json");
    std::fs::write(
        &path,
        r#"{"monoid": "cyclic:2", "X": ["1"], "domain": [], "rho": {}}"#,
    )
    .unwrap();
    let out = run(&["set-action", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn broken_axioms_exit_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    // alpha_g(1) = 2 with X_g = {1}: fails partial associativity.
    std::fs::write(
        &path,
        r#"{
  "schema": 1,
  "monoid": "cyclic:2",
  "X": ["1", "2"],
  "domain": [["1", "e"], ["1", "g"], ["2", "e"]],
  "rho": {"1,e": "1", "1,g": "2", "2,e": "2"}
}"#,
    )
    .unwrap();
    let out = run(&["set-action", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("[FAIL] axioms"));
}

#[test]
fn report_flag_writes_byte_identical_json() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = run(&[
            "set-action",
            "--fixture",
            "z2part",
            "--report",
            p.to_str().unwrap(),
            "--format",
            "json",
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert_eq!(bytes_a, bytes_b);
    // The report written to disk equals the JSON printed to stdout.
    let out = run(&["set-action", "--fixture", "z2part", "--format", "json"]);
    assert_eq!(out.stdout, bytes_a);
}

#[test]
fn committed_fixture_files_match_the_catalog() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for (name, _, _) in catalog::list() {
        let file = name.replace([':', '/'], "_").replace('=', "");
        let path = dir.join(format!("{file}.json"));
        let committed = std::fs::read_to_string(&path)
            .unwrap_or_else(|_| panic!("missing committed fixture {path:?}"));
        let (_, generated) = catalog::fixture(name).unwrap();
        assert_eq!(committed, generated, "{name} drifted from its committed file");
    }
}

#[test]
fn fixture_files_run_like_fixtures() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let from_file = run(&[
        "pca",
        dir.join("ab2_alpha1.json").to_str().unwrap(),
        "--compare",
        "--format",
        "json",
    ]);
    assert_eq!(from_file.status.code(), Some(0));
    let text = stdout(&from_file);
    assert!(text.contains("\"y\": 4"));
    assert!(text.contains("\"b\": 2"));
    assert!(text.contains("\"strict\": true"));
}

#[test]
fn fixtures_show_prints_canonical_bytes() {
    let out = run(&["fixtures", "show", "z2part"]);
    assert_eq!(out.status.code(), Some(0));
    let (_, expected) = catalog::fixture("z2part").unwrap();
    assert_eq!(stdout(&out), expected);
}

#[test]
fn gl2_flag_checks_a_target_file() {
    let dir = tempfile::tempdir().unwrap();
    let z = dir.path().join("z.json");
    std::fs::write(
        &z,
        r#"{
  "schema": 1,
  "monoid": "cyclic:2",
  "Y": ["p", "q"],
  "act": {"p,e": "p", "p,g": "q", "q,e": "q", "q,g": "p"}
}"#,
    )
    .unwrap();
    let out = run(&[
        "set-action",
        "--fixture",
        "z2part",
        "--check-gl2",
        z.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("[pass] gl2-universal"));
}

#[test]
fn pca_dump_matrices_includes_structure_maps() {
    let out = run(&[
        "pca",
        "--fixture",
        "ab2:alpha=0",
        "--compare",
        "--dump-matrices",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for key in ["\"pi\"", "\"rho\"", "\"vartheta\"", "\"j\"", "\"p\""] {
        assert!(text.contains(key), "expected {key} in the dumped report");
    }
}

#[test]
fn top_util_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let sier = dir.path().join("sier.json");
    std::fs::write(
        &sier,
        r#"{"schema": 1, "points": ["a", "b"], "opens": [[], ["a"], ["a", "b"]]}"#,
    )
    .unwrap();
    let validate = run(&["top", "util", "validate", sier.to_str().unwrap()]);
    assert_eq!(validate.status.code(), Some(0));

    let product = run(&[
        "top",
        "util",
        "product",
        sier.to_str().unwrap(),
        sier.to_str().unwrap(),
    ]);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&product)).unwrap();
    assert_eq!(parsed["opens"].as_array().unwrap().len(), 6);

    let hausdorff = run(&["top", "util", "hausdorff", sier.to_str().unwrap()]);
    assert!(stdout(&hausdorff).contains("false"));

    let embed = run(&[
        "top",
        "util",
        "continuous",
        sier.to_str().unwrap(),
        sier.to_str().unwrap(),
        "--map",
        "a>a,b>b",
    ]);
    assert!(stdout(&embed).contains("true"));

    let bad_family = dir.path().join("bad.json");
    std::fs::write(
        &bad_family,
        r#"{"schema": 1, "points": ["a", "b", "c"], "opens": [[], ["a"], ["b"], ["a", "b", "c"]]}"#,
    )
    .unwrap();
    let invalid = run(&["top", "util", "validate", bad_family.to_str().unwrap()]);
    assert_eq!(invalid.status.code(), Some(2));
}

#[test]
fn explain_prints_the_witness_to_stderr() {
    let out = run(&["top-action", "--fixture", "counter", "--explain"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("(a,e)"), "witness should be explained: {err}");
}

#[test]
fn prime_field_files_run_end_to_end() {
    // The ground field coacting trivially on itself over F5.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f5.json");
    std::fs::write(
        &path,
        r#"{
  "schema": 1,
  "field": "Fp:5",
  "algebra": {
    "dim": 1,
    "basis": ["1"],
    "constants": { "0,0": { "0": "1" } },
    "unit": ["1"]
  },
  "bialgebra": "group:cyclic:2",
  "coaction": [["1"], ["0"]]
}"#,
    )
    .unwrap();
    let out = run(&["pca", path.to_str().unwrap(), "--compare", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("\"y\": 1"));
    assert!(text.contains("\"b\": 1"));
    // A composite modulus is an input error.
    let bad = dir.path().join("f6.json");
    std::fs::write(&bad, std::fs::read_to_string(&path).unwrap().replace("Fp:5", "Fp:6")).unwrap();
    let out = run(&["pca", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seed_is_recorded_in_the_report() {
    let out = run(&[
        "set-action",
        "--fixture",
        "z2part",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    assert!(stdout(&out).contains("\"seed\": 7"));
}
