//! End-to-end checks of the `btalg` binary: exit codes, JSON reports,
//! and byte-level determinism of the suite report.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_btalg")
}

fn run(args: &[&str]) -> Output {
    Command::new(binary()).args(args).output().expect("spawn btalg")
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("btalg-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("write temp file");
    path
}

#[test]
fn check_product_flags_the_counterexample_pair() {
    // t has a sub-diagonal coefficient, u a super-diagonal one; the dense
    // product is not Toeplitz.
    let pair = r#"{
        "t": {"n": 2, "d": 1, "blocks": [["0"], ["0"], ["1"]]},
        "u": {"n": 2, "d": 1, "blocks": [["1"], ["0"], ["0"]]}
    }"#;
    let input = temp_file("pair.json", pair);
    let output = run(&["check-product", "--input", input.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1), "non-Toeplitz product exits 1");
    let report = stdout_json(&output);
    assert_eq!(report["toeplitz"], false);
    assert_eq!(report["product_condition"], false);
    assert_eq!(report["structured"], Value::Null);
}

#[test]
fn check_product_accepts_a_multiplicative_pair() {
    let pair = r#"{
        "t": {"n": 2, "d": 1, "blocks": [["1/2"], ["3"], ["0"]]},
        "u": {"n": 2, "d": 1, "blocks": [["-1"], ["2"], ["0"]]}
    }"#;
    let input = temp_file("pair-ok.json", pair);
    let output = run(&["check-product", "--input", input.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let report = stdout_json(&output);
    assert_eq!(report["toeplitz"], true);
    assert_eq!(report["product_condition"], true);
}

#[test]
fn fab_maximality_inline_flags() {
    let output = run(&[
        "fab", "maximality", "--entry", "diagonal", "--d", "2", "--n", "3", "--A", "I", "--B", "I",
    ]);
    assert_eq!(output.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    let report = stdout_json(&output);
    assert_eq!(report["maximality"]["verdict"], "maximal");
    assert_eq!(report["family"]["dim"], 6);
}

#[test]
fn fab_maximality_refutes_scalar_entries() {
    let spec = r#"{"kind": "explicit", "d": 2, "basis": [["1", "0", "0", "1"]]}"#;
    let spec_file = temp_file("scalars.json", spec);
    let output = run(&[
        "fab",
        "maximality",
        "--spec",
        spec_file.to_str().unwrap(),
        "--n",
        "2",
        "--A",
        "I",
        "--B",
        "I",
    ]);
    assert_eq!(output.status.code(), Some(1));
    let report = stdout_json(&output);
    assert_eq!(report["maximality"]["verdict"], "not_maximal");
    assert!(report["maximality"]["witness"].is_object());
}

#[test]
fn fab_derive_ab_from_json() {
    let input = r#"{
        "entry": {"kind": "diagonal", "d": 2},
        "t": {
            "n": 2, "d": 2,
            "blocks": [["3", "0", "0", "4"], ["0", "0", "0", "0"], ["1", "0", "0", "2"]]
        }
    }"#;
    let file = temp_file("derive.json", input);
    let output = run(&["fab", "derive-ab", "--input", file.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let report = stdout_json(&output);
    assert_eq!(report["derived"], true);
    assert_eq!(report["pivot"], 1);
    assert_eq!(report["A"], serde_json::json!(["3", "0", "0", "2"]));
    assert_eq!(report["B"], serde_json::json!(["1", "0", "0", "1"]));
}

#[test]
fn scalar_find_alpha_inline_coefficients() {
    let output = run(&["scalar", "find-alpha", "--coeffs", "0,1,1"]);
    assert_eq!(output.status.code(), Some(0));
    let report = stdout_json(&output);
    assert_eq!(report["scan"], "unique");
    assert_eq!(report["alpha"], "0");
}

#[test]
fn scalar_circulant_emits_basis() {
    let output = run(&["scalar", "circulant", "--n", "3", "--alpha", "inf"]);
    assert_eq!(output.status.code(), Some(0));
    let report = stdout_json(&output);
    assert_eq!(report["basis"]["dim"], 3);
}

#[test]
fn algebra_maximality_check() {
    let output = run(&[
        "algebra", "--entry", "schur", "--sigma", "1", "--tau", "2", "--op", "maximal",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let report = stdout_json(&output);
    assert_eq!(report["maximal_commutative"], true);
}

#[test]
fn casestudy_nilpotent_verifies() {
    let output = run(&["casestudy", "nilpotent", "--n", "2"]);
    assert_eq!(output.status.code(), Some(0));
    let report = stdout_json(&output);
    assert_eq!(report["all_verified"], true);
    assert!(report["reports"].as_array().unwrap().len() >= 3);
    for sub in report["reports"].as_array().unwrap() {
        assert_eq!(sub["verdict"], "verified");
    }
}

#[test]
fn malformed_input_exits_two() {
    let input = temp_file("bad.json", r#"{"t": {"n": 2, "d": 1}}"#);
    let output = run(&["check-product", "--input", input.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("blocks"), "diagnostic names the field: {stderr}");

    let output = run(&["fab", "maximality", "--entry", "diagonal", "--n", "2"]);
    assert_eq!(output.status.code(), Some(2));

    let output = run(&["no-such-command"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn suite_reports_are_byte_identical_per_seed() {
    let out_a = temp_file("suite-a.json", "");
    let out_b = temp_file("suite-b.json", "");
    let first = run(&["suite", "--seed", "1", "--output", out_a.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&first.stderr));
    let second = run(&["suite", "--seed", "1", "--output", out_b.to_str().unwrap()]);
    assert_eq!(second.status.code(), Some(0));

    let bytes_a = std::fs::read(&out_a).unwrap();
    let bytes_b = std::fs::read(&out_b).unwrap();
    assert_eq!(bytes_a, bytes_b, "same seed, same bytes");

    let report: Value = serde_json::from_slice(&bytes_a).unwrap();
    assert_eq!(report["all_passed"], true);
    assert_eq!(report["criteria"].as_array().unwrap().len(), 10);

    // The human-readable criterion lines go to standard error.
    let stderr = String::from_utf8_lossy(&first.stderr);
    assert!(stderr.contains("criterion  1: PASS"));
    assert!(stderr.contains("criterion 10: PASS"));
}
