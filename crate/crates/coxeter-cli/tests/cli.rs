//! End-to-end tests of the coxeter binary: exit codes, report shapes,
//! and byte-level determinism.

use serde_json::Value;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)
}

fn coxeter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxeter"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_stdout(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn json_stderr(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process exited")
}

#[test]
fn mult_identity_pair_gives_unit_table() {
    let out = coxeter(&[
        "--config",
        &fixture("a2.json"),
        "mult",
        "--x",
        "e",
        "--y",
        "e",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = json_stdout(&out);
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
    assert_eq!(v["terms"][0]["z"], serde_json::json!([]));
    assert_eq!(v["terms"][0]["f"], serde_json::json!([[0, "1"]]));
    assert_eq!(v["max_degree"], 0);
}

#[test]
fn mult_generator_square() {
    let out = coxeter(&[
        "--config",
        &fixture("a2.json"),
        "mult",
        "--x",
        "1",
        "--y",
        "1",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = json_stdout(&out);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["z"], serde_json::json!([]));
    assert_eq!(terms[0]["f"], serde_json::json!([[0, "1"]]));
    assert_eq!(terms[1]["z"], serde_json::json!([1]));
    assert_eq!(terms[1]["f"], serde_json::json!([[-1, "-1"], [1, "1"]]));
}

#[test]
fn mult_longest_element_reports_bound_comparison() {
    let out = coxeter(&[
        "--config",
        &fixture("a2.json"),
        "mult",
        "--x",
        "1,2,1",
        "--y",
        "1,2,1",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = json_stdout(&out);
    assert_eq!(v["max_degree"], 3);
    assert_eq!(v["n_weighted"], 3);
    assert_eq!(v["within_bound"], true);
    assert_eq!(v["witness_z"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["terms"].as_array().unwrap().len(), 6);
}

#[test]
fn expand_agrees_with_direct_product() {
    let out = coxeter(&[
        "--config",
        &fixture("b2_weighted.json"),
        "expand",
        "--x",
        "1,2",
        "--y",
        "2,1,2",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = json_stdout(&out);
    assert_eq!(v["aggregate_matches_direct"], true);
    assert_eq!(v["truncated"], false);
}

#[test]
fn expand_budget_exhaustion_exits_4() {
    let out = coxeter(&[
        "--config",
        &fixture("a2.json"),
        "expand",
        "--x",
        "1,2,1",
        "--y",
        "1,2,1",
        "--budget",
        "2",
    ]);
    assert_eq!(exit_code(&out), 4);
    let v = json_stdout(&out);
    assert_eq!(v["truncated"], true);
    assert_eq!(v["aggregate_matches_direct"], Value::Null);
}

#[test]
fn construct_full_deletion_chain() {
    let out = coxeter(&[
        "--config",
        &fixture("affine_a2.json"),
        "construct",
        "--x",
        "1,2,1",
        "--y",
        "1,2,1",
        "--indices",
        "1,2,3",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = json_stdout(&out);
    assert_eq!(v["q_final_size"], 3);
    assert_eq!(v["steps"].as_array().unwrap().len(), 3);
}

#[test]
fn construct_rejects_failing_descent_condition() {
    let out = coxeter(&[
        "--config",
        &fixture("a2.json"),
        "construct",
        "--x",
        "e",
        "--y",
        "1",
        "--indices",
        "1",
    ]);
    assert_eq!(exit_code(&out), 2);
    let e = json_stderr(&out);
    assert_eq!(e["error"]["code"], "sequence-invalid");
}

#[test]
fn construct_rejects_malformed_indices() {
    let out = coxeter(&[
        "--config",
        &fixture("a2.json"),
        "construct",
        "--x",
        "1,2",
        "--y",
        "1,2",
        "--indices",
        "2,1",
    ]);
    assert_eq!(exit_code(&out), 2);
    let e = json_stderr(&out);
    assert_eq!(e["error"]["code"], "sequence-malformed");
}

#[test]
fn verify_passes_at_the_true_bound() {
    let out = coxeter(&[
        "--config",
        &fixture("affine_a2.json"),
        "verify",
        "--length-cap",
        "3",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = json_stdout(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["bound"], 3);
    assert_eq!(v["check"]["max_degree_seen"], 3);
    assert_eq!(v["elements"], 19);
}

#[test]
fn verify_fails_below_the_true_bound() {
    let out = coxeter(&[
        "--config",
        &fixture("a2.json"),
        "verify",
        "--length-cap",
        "3",
        "--bound",
        "2",
    ]);
    assert_eq!(exit_code(&out), 3);
    let v = json_stdout(&out);
    assert_eq!(v["pass"], false);
    assert!(!v["check"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn bounds_reproduces_the_rank4_example() {
    let out = coxeter(&[
        "--config",
        &fixture("example54.json"),
        "bounds",
        "--col-depth",
        "4",
        "--clique-depth",
        "2",
        "--budget",
        "500000",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = json_stdout(&out);
    assert_eq!(v["report"]["n_unweighted"], 6);
    assert_eq!(v["report"]["n_weighted"], 6);
    assert!(v["report"]["clique"]["size"].as_u64().unwrap() >= 7);
    assert_eq!(v["report"]["clique"]["exhausted"], true);
    assert_eq!(v["report"]["coherent"], true);
}

#[test]
fn clique_on_the_universal_group_is_a_single_hyperplane() {
    for cfg in ["universal2.json", "universal0.json"] {
        let out = coxeter(&["--config", &fixture(cfg), "clique", "--depth", "4"]);
        assert_eq!(exit_code(&out), 0);
        let v = json_stdout(&out);
        assert_eq!(v["result"]["size"], 1);
        assert_eq!(v["result"]["exhausted"], true);
    }
}

#[test]
fn enumerate_budget_exhaustion_exits_4() {
    let out = coxeter(&[
        "--config",
        &fixture("affine_a2.json"),
        "enumerate",
        "--kind",
        "elements",
        "--cap",
        "20",
        "--budget",
        "10",
    ]);
    assert_eq!(exit_code(&out), 4);
    let v = json_stdout(&out);
    assert_eq!(v["truncated"], true);
    assert_eq!(v["count"], 10);
}

#[test]
fn enumerate_roots_counts_match() {
    let out = coxeter(&[
        "--config",
        &fixture("a2.json"),
        "enumerate",
        "--kind",
        "roots",
        "--cap",
        "5",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = json_stdout(&out);
    assert_eq!(v["count"], 3);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "--config",
        &fixture("example54.json"),
        "bounds",
        "--col-depth",
        "3",
        "--clique-depth",
        "2",
    ];
    let a = coxeter(&args);
    let b = coxeter(&args);
    assert_eq!(exit_code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn missing_and_malformed_configs_exit_2() {
    let out = coxeter(&[
        "--config",
        "/nonexistent/x.json",
        "mult",
        "--x",
        "1",
        "--y",
        "1",
    ]);
    assert_eq!(exit_code(&out), 2);
    assert_eq!(json_stderr(&out)["error"]["code"], "io");

    let out = coxeter(&["mult", "--x", "1", "--y", "1"]);
    assert_eq!(exit_code(&out), 2);
    assert_eq!(json_stderr(&out)["error"]["code"], "config");
}

#[test]
fn out_of_range_generator_exits_2() {
    let out = coxeter(&[
        "--config",
        &fixture("a2.json"),
        "mult",
        "--x",
        "1,5",
        "--y",
        "1",
    ]);
    assert_eq!(exit_code(&out), 2);
    assert_eq!(json_stderr(&out)["error"]["code"], "bad-word");
}

#[test]
fn report_written_to_out_file() {
    let dir = std::env::temp_dir().join(format!("coxeter-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = coxeter(&[
        "--config",
        &fixture("a2.json"),
        "--out",
        path.to_str().unwrap(),
        "clique",
        "--depth",
        "3",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["size"], 3);
    std::fs::remove_dir_all(&dir).ok();
}
