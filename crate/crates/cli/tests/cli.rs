use std::path::PathBuf;
use std::process::Command;

use lcs_cli::{run, Output};
use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    run(std::iter::once("lcs-verify").chain(args.iter().copied()))
}

fn machine(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "machine"];
    full.extend_from_slice(args);
    let out = cli(&full);
    assert!(out.stderr.is_empty(), "{}", out.stderr);
    (out.code, serde_json::from_str(&out.stdout).unwrap())
}

fn scratch(name: &str, contents: &str) -> String {
    let path: PathBuf = [env!("CARGO_TARGET_TMPDIR"), name].iter().collect();
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

const SOLV: &[&str] = &["--model", "catalog:paper_example"];

fn with(base: &[&'static str], extra: &[&'static str]) -> Vec<&'static str> {
    let mut v = base.to_vec();
    v.extend_from_slice(extra);
    v
}

#[test]
fn hl_on_paper_example_is_an_isomorphism() {
    let (code, doc) = machine(&with(&["hl"], &with(SOLV, &["--omega", "catalog:omega"])));
    assert_eq!(code, 0);
    assert_eq!(doc["isomorphism"], true);
    assert_eq!(doc["rank"], 2);
}

#[test]
fn hl_on_kodaira_thurston_reports_the_kernel() {
    let (code, doc) = machine(&["hl", "--model", "catalog:kodaira_thurston", "--omega", "catalog:kt_omega"]);
    assert_eq!(code, 1);
    assert_eq!(doc["isomorphism"], false);
    assert_eq!(doc["kernel_classes"], serde_json::json!([{ "degree": 1, "terms": [["1", [1]]] }]));
}

#[test]
fn lee_class_of_theta_on_paper_example_is_nonzero() {
    let (code, doc) = machine(&with(&["lee-class"], &with(SOLV, &["--theta", "catalog:theta"])));
    assert_eq!(code, 1);
    assert_eq!(doc["class"], serde_json::json!(["-1", "0"]));
    assert_eq!(doc["gcs"], false);
}

#[test]
fn machine_documents_start_with_command_and_end_with_exit_code() {
    let out = cli(&["--format", "machine", "betti", "--model", "catalog:kodaira_thurston"]);
    assert!(out.stdout.starts_with(r#"{"command":"betti","#));
    assert!(out.stdout.ends_with("\"exit_code\":0}\n"));
    let doc: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(doc["betti"], serde_json::json!([1, 3, 4, 3, 1]));
    assert_eq!(doc["euler_characteristic"], 0);
}

#[test]
fn check_lcs_solves_for_the_lee_form() {
    let (code, doc) = machine(&with(&["check-lcs"], &with(SOLV, &["--eta", "catalog:eta"])));
    assert_eq!(code, 0);
    assert_eq!(doc["theta_solved"], true);
    assert_eq!(doc["theta"]["terms"], serde_json::json!([["-1", [3]]]));
    assert_eq!(doc["gcs"], false);

    let (code, doc) = machine(&with(&["check-lcs"], &with(SOLV, &["--eta", "catalog:eta", "--theta", "catalog:theta"])));
    assert_eq!((code, &doc["lcs"]), (0, &Value::Bool(true)));
}

#[test]
fn a_lee_form_with_the_wrong_sign_is_rejected() {
    let theta = scratch("theta_pos.json", r#"{"degree":1,"terms":[["1",[3]]]}"#);
    let (code, doc) = machine(&["check-lcs", "--model", "catalog:paper_example", "--eta", "catalog:eta", "--theta", &theta]);
    assert_eq!(code, 1);
    assert_eq!(doc["lcs"], false);
}

#[test]
fn check_symplectic_distinguishes_closed_from_nondegenerate() {
    let (code, doc) = machine(&with(&["check-symplectic"], &with(SOLV, &["--omega", "catalog:omega"])));
    assert_eq!(code, 0);
    assert_eq!(doc["top_power_coefficient"], "2");
    let (code, doc) = machine(&with(&["check-symplectic"], &with(SOLV, &["--omega", "catalog:eta"])));
    assert_eq!(code, 1);
    assert_eq!(doc["closed"], false);
}

#[test]
fn lemma_report_exit_code_follows_agreement() {
    let (code, doc) = machine(&with(&["lemma-report"], &with(SOLV, &["--omega", "catalog:omega", "--j", "catalog:j0_t2"])));
    assert_eq!(code, 0);
    assert_eq!(doc["conditions_agree"], true);
    assert_eq!(doc["conditions"]["hard_lefschetz"], true);

    let (code, doc) = machine(&with(&["lemma-report"], &with(SOLV, &["--omega", "catalog:omega", "--j", "catalog:j_eta"])));
    assert_eq!(code, 1);
    assert_eq!(doc["almost_kahler"], false);
}

#[test]
fn theorem1_on_the_torus_forces_a_zero_lee_form() {
    let theta = scratch("zero_theta.json", r#"{"degree":1,"terms":[]}"#);
    let (code, doc) = machine(&[
        "theorem1", "--model", "catalog:torus4", "--omega", "catalog:omega", "--eta", "catalog:omega", "--theta", &theta, "--j", "catalog:j0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["verdict"], "ThetaZero");
}

#[test]
fn theorem1_on_the_lcs_pair_fails_compatibility_with_omega() {
    let (code, doc) = machine(&with(
        &["theorem1"],
        &with(SOLV, &["--omega", "catalog:omega", "--eta", "catalog:eta", "--theta", "catalog:theta", "--j", "catalog:j_eta"]),
    ));
    assert_eq!(code, 1);
    assert_eq!(doc["verdict"], "HypothesisFailed(J-compat-omega)");
    assert_eq!(doc["hypotheses"]["J-compat-eta"], true);
    assert_eq!(doc["positivity"], "1");
}

#[test]
fn star_uses_the_induced_metric_when_asked() {
    let (code, doc) = machine(&with(&["star"], &with(SOLV, &["--omega", "catalog:omega", "--j", "catalog:j0", "--form", "catalog:omega"])));
    assert_eq!(code, 0);
    assert_eq!(doc["metric"], "induced");
    assert_eq!(doc["star"]["terms"], serde_json::json!([["1", [1, 2]], ["1", [3, 4]]]));
    let (_, doc) = machine(&with(&["star"], &with(SOLV, &["--degree", "0"])));
    assert_eq!(doc["matrix"], serde_json::json!([["1"]]));
}

#[test]
fn harmonics_of_each_operator() {
    let (code, doc) = machine(&with(&["harmonics"], &with(SOLV, &["--degree", "1"])));
    assert_eq!(code, 0);
    assert_eq!(doc["dim"], 2);
    let (_, doc) = machine(&with(&["harmonics"], &with(SOLV, &["--op", "dbar", "--omega", "catalog:omega", "--j", "catalog:j0"])));
    assert_eq!(doc["dim"], 3);
    assert_eq!(doc["basis"][0]["terms"], serde_json::json!([["1", [1]], ["-i", [2]]]));
    let out = cli(&with(&["harmonics"], &with(SOLV, &["--op", "mu"])));
    assert_eq!(out.code, 2);
}

#[test]
fn canonical_j_recovers_the_standard_structure() {
    let (code, doc) = machine(&with(&["canonical-j"], &with(SOLV, &["--omega", "catalog:omega"])));
    assert_eq!(code, 0);
    let (_, catalog) = machine(&["catalog"]);
    assert_eq!(doc["exact"], catalog["structures"]["j0"]);
    let metric = scratch("metric.json", r#"{"dim":4,"matrix":[["2","1","0","0"],["1","1","0","0"],["0","0","1","0"],["0","0","0","1"]]}"#);
    let (code, doc) = machine(&["canonical-j", "--model", "catalog:paper_example", "--omega", "catalog:omega", "--metric", &metric]);
    assert_eq!(code, 0);
    assert!(doc["square_residual"].as_str().unwrap().parse::<f64>().unwrap() < 1e-9);
}

#[test]
fn find_shared_j_reports_both_outcomes() {
    let eta = scratch("eta_same.json", r#"{"degree":2,"terms":[["1",[1,2]],["2",[3,4]]]}"#);
    let (code, doc) = machine(&["find-shared-j", "--model", "catalog:torus4", "--omega", "catalog:omega", "--eta", &eta, "--restarts", "4"]);
    assert_eq!(code, 0);
    assert_eq!(doc["status"], "Found");
    let (code, doc) = machine(&with(&["find-shared-j"], &with(SOLV, &["--omega", "catalog:omega", "--eta", "catalog:eta", "--restarts", "4"])));
    assert_eq!(code, 1);
    assert_eq!(doc["status"], "NotFound");
}

#[test]
fn survey_exit_code_requires_every_sample() {
    let (code, doc) = machine(&["survey-hl", "--model", "catalog:torus4", "--seed", "3", "--samples", "10"]);
    assert_eq!((code, &doc["fraction"]), (0, &Value::String("1.0000000000000000e0".into())));
    let (code, _) = machine(&["survey-hl", "--model", "catalog:kodaira_thurston", "--seed", "3", "--samples", "10"]);
    assert_eq!(code, 1);
}

#[test]
fn model_files_are_validated() {
    let good = scratch("kt.json", r#"{"name":"kt","dim":4,"basis":["e1","e2","e3","e4"],"d":{"e4":[["1",[1,2]]]}}"#);
    let (code, doc) = machine(&["validate", "--model", &good]);
    assert_eq!(code, 0);
    assert_eq!(doc["unimodular"], true);

    let jacobi = scratch("bad.json", r#"{"name":"bad","dim":4,"basis":["e1","e2","e3","e4"],"d":{"e1":[["1",[3,4]]],"e4":[["1",[1,2]]]}}"#);
    let (code, doc) = machine(&["validate", "--model", &jacobi]);
    assert_eq!(code, 1);
    assert_eq!(doc["valid"], false);

    let malformed = scratch("malformed.json", "{ not json");
    assert_eq!(cli(&["validate", "--model", &malformed]).code, 2);
}

#[test]
fn input_errors_exit_with_two() {
    for args in [
        vec!["hl", "--model", "catalog:missing", "--omega", "catalog:omega"],
        vec!["hl", "--model", "catalog:paper_example", "--omega", "catalog:theta"],
        vec!["lee-class", "--model", "catalog:paper_example", "--theta", "/no/such/file"],
        vec!["lemma-report", "--model", "catalog:paper_example", "--omega", "catalog:omega", "--j", "catalog:j0_t9"],
        vec!["frobnicate"],
        vec!["hl", "--model", "catalog:paper_example"],
    ] {
        let out = cli(&args);
        assert_eq!(out.code, 2, "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn catalog_lists_every_entry() {
    let (code, doc) = machine(&["catalog"]);
    assert_eq!(code, 0);
    assert_eq!(doc["models"].as_object().unwrap().len(), 3);
    assert_eq!(doc["structures"].as_object().unwrap().len(), 8);
    assert_eq!(doc["forms"]["eta"]["form"], "e14 + e23");
}

#[test]
fn the_binary_forwards_output_and_exit_code() {
    let out = Command::new(env!("CARGO_BIN_EXE_lcs-verify"))
        .args(["lee-class", "--model", "catalog:paper_example", "--theta", "catalog:theta"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("class: [-1, 0]"));
}
