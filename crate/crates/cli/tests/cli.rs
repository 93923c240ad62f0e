//! End-to-end tests of the `numrange` binary: exit codes, formats and
//! report round-trips.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_numrange"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("numrange-cli-test-{name}"));
    std::fs::write(&path, contents).unwrap();
    path
}

fn identity2() -> PathBuf {
    write_temp(
        "id2.json",
        r#"{"n":2,"data":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#,
    )
}

fn nilpotent2() -> PathBuf {
    write_temp(
        "nil2.json",
        r#"{"n":2,"data":[[[0,0],[2,0]],[[0,0],[0,0]]]}"#,
    )
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn quantities_of_identity() {
    let file = identity2();
    let out = run(&["quantities", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("operator_norm    = 1.0"));
    assert!(text.contains("numerical_radius = 1.0"));
    assert!(text.contains("crawford_number  = 1.0"));
}

#[test]
fn quantities_of_square_zero_matrix() {
    let file = nilpotent2();
    let out = run(&["quantities", file.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((doc["operator_norm"].as_f64().unwrap() - 2.0).abs() < 1e-10);
    assert!((doc["numerical_radius"].as_f64().unwrap() - 1.0).abs() < 1e-8);
    assert!(doc["crawford_number"].as_f64().unwrap().abs() < 1e-8);
}

#[test]
fn malformed_matrix_is_exit_2() {
    let file = write_temp("bad.json", r#"{"n":3,"data":[[[0,0],[2,0]]]}"#);
    let out = run(&["quantities", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_passes_on_identity() {
    let file = identity2();
    let out = run(&["check", "--chain", "CH-EQV", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("[PASS] CH-EQV"));
}

#[test]
fn check_reports_violation_with_exit_1() {
    // a negative tolerance turns the tight equality into a reported violation,
    // exercising the exit-1 path (every registered chain is a theorem, so no
    // input produces a genuine violation at a positive tolerance)
    let file = nilpotent2();
    let out = run(&[
        "check",
        "--chain",
        "CH-IDENT",
        file.to_str().unwrap(),
        "--tol=-1e-3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("[FAIL] CH-IDENT"));
}

#[test]
fn check_unknown_chain_is_exit_2() {
    let file = identity2();
    let out = run(&["check", "--chain", "CH-NOPE", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_wrong_arity_is_exit_2() {
    let file = identity2();
    let out = run(&["check", "--chain", "CH-BK", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_non_psd_pair_is_exit_2() {
    let neg = write_temp(
        "neg2.json",
        r#"{"n":2,"data":[[[-1,0],[0,0]],[[0,0],[-1,0]]]}"#,
    );
    let id = identity2();
    let out = run(&[
        "check",
        "--chain",
        "CH-BK2",
        neg.to_str().unwrap(),
        id.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn batch_small_run_is_deterministic() {
    let args = [
        "batch", "--chain", "CH-EQV", "--chain", "CH-KIT05", "--class", "ginibre", "--n", "3",
        "--count", "10", "--seed", "9", "--format", "json", "--keep-verdicts",
    ];
    let out1 = run(&args);
    let out2 = run(&args);
    assert_eq!(out1.status.code(), Some(0));
    assert_eq!(stdout(&out1), stdout(&out2));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out1)).unwrap();
    assert_eq!(doc["summary"]["total"], 20);
    assert_eq!(doc["summary"]["failed"], 0);
    assert_eq!(doc["verdicts"].as_array().unwrap().len(), 20);
}

#[test]
fn batch_csv_has_header_and_rows() {
    let out = run(&[
        "batch", "--chain", "CH-EQV", "--n", "2", "--count", "3", "--format", "csv",
        "--keep-verdicts",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.trim().lines();
    assert_eq!(
        lines.next().unwrap(),
        "chain_id,class,n,sample_index,params,term_labels,term_values,min_slack,pass"
    );
    assert_eq!(lines.count(), 3);
}

#[test]
fn batch_rejects_unknown_class() {
    let out = run(&["batch", "--class", "wishart"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn paper_examples_pass() {
    for id in [
        "cor5-2x2",
        "nilpotent-sharpness",
        "hermitian-sharpness",
        "remark-counterexamples",
    ] {
        let out = run(&["paper-example", id]);
        assert_eq!(out.status.code(), Some(0), "{id}: {}", stdout(&out));
    }
    let out = run(&["paper-example", "unknown"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn paper_example_pins_the_2x2_terms() {
    let out = run(&["paper-example", "cor5-2x2", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let terms = doc["verdicts"][0]["verdict"]["term_values"]
        .as_array()
        .unwrap();
    let mid = terms[1][1].as_f64().unwrap();
    assert!((mid - (61.0f64 / 12.0).sqrt()).abs() < 1e-9);
    let last = terms[2][1].as_f64().unwrap();
    assert!((last - 2.5).abs() < 1e-12);
}

#[test]
fn catalog_lists_every_chain_sorted() {
    let out = run(&["catalog"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let ids: Vec<&str> = text
        .lines()
        .filter_map(|l| l.split_whitespace().next())
        .collect();
    assert!(ids.len() >= 30);
    assert!(ids.contains(&"CH-T3.13"));
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted, "catalog ordered by id");
}

#[test]
fn out_flag_writes_file() {
    let file = identity2();
    let target = std::env::temp_dir().join("numrange-cli-test-report.json");
    let _ = std::fs::remove_file(&target);
    let out = run(&[
        "check", "--chain", "CH-EQV", file.to_str().unwrap(), "--format", "json", "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(doc["summary"]["passed"], 1);
}
