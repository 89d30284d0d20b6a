//! End-to-end tests of the binary: exit codes, document shapes, schema
//! conformance and byte-level determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_degenbound"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    let text = std::fs::read_to_string(path).expect("schema file");
    let value: Value = serde_json::from_str(&text).expect("schema is JSON");
    jsonschema::JSONSchema::compile(&value).expect("schema compiles")
}

fn assert_valid(schema_name: &str, doc: &Value) {
    let compiled = schema(schema_name);
    let details: Vec<String> = match compiled.validate(doc) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    assert!(details.is_empty(), "document violates {schema_name}: {details:?}");
}

#[test]
fn bound_perfect_code_passes_and_flags_equality() {
    let out = run(&["bound", "-n", "5", "-k", "1", "-d", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_valid("bound.schema.json", &doc);
    assert_eq!(doc["all_hold"], Value::Bool(true));
    let qh = &doc["verdicts"][0];
    assert_eq!(qh["bound"], "quantum-hamming");
    assert_eq!(qh["saturated"], Value::Bool(true));
    assert_eq!(qh["witness"]["lhs"], qh["witness"]["rhs"]);
}

#[test]
fn bound_excluded_degenerate_parameters_exit_one() {
    let out = run(&["bound", "-n", "13", "-k", "7", "-d", "3", "--assume-degenerate"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json_of(&out);
    assert_valid("bound.schema.json", &doc);
    let failing: Vec<&str> = doc["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|v| v["holds"] == Value::Bool(false))
        .map(|v| v["bound"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["degenerate-hamming"]);
}

#[test]
fn bound_rejects_invalid_length() {
    let out = run(&["bound", "-n", "0", "-k", "0", "-d", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn bound_with_profile_and_classical() {
    let out = run(&[
        "bound", "-n", "6", "-k", "1", "-d", "3", "--ell", "1", "--sigma", "1",
        "--assume-degenerate", "--classical-q", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_valid("bound.schema.json", &doc);
    let bounds: Vec<&str> =
        doc["verdicts"].as_array().unwrap().iter().map(|v| v["bound"].as_str().unwrap()).collect();
    assert_eq!(
        bounds,
        [
            "quantum-hamming",
            "singleton",
            "low-weight-profile",
            "ell-t",
            "degenerate-hamming",
            "prior-distance-3",
            "classical-hamming"
        ]
    );
}

#[test]
fn maxk_document_validates() {
    let out = run(&["maxk", "-n", "10", "-d", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_valid("maxk.schema.json", &doc);
    assert_eq!(doc["rows"][0]["max_k"], 5); // quantum Hamming at (10, 1)
}

#[test]
fn thresholds_weight_one_report() {
    let out = run(&["thresholds", "-t", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_valid("thresholds.schema.json", &doc);
    assert_eq!(doc["a0"], 5);
    assert_eq!(doc["n0"], 10);
    assert_eq!(doc["conjecture_holds"], Value::Bool(true));
    let crossings: Vec<u64> = doc["crossing_points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["n_a"].as_u64().unwrap())
        .collect();
    assert_eq!(crossings, [4, 5, 7, 9]);
}

#[test]
fn thresholds_horizon_guard_is_usage_error() {
    let out = run(&["thresholds", "-t", "1", "--horizon", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("horizon"), "stderr: {msg}");
}

#[test]
fn thresholds_honors_horizon_env_var() {
    let out = bin()
        .args(["thresholds", "-t", "1"])
        .env("DEGENBOUND_HORIZON", "5")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table1_matches_reference() {
    let out = run(&["thresholds", "--table1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_valid("table1.schema.json", &doc);
    assert_eq!(doc["all_match"], Value::Bool(true));
    let computed: Vec<u64> =
        doc["rows"].as_array().unwrap().iter().map(|r| r["n_t_computed"].as_u64().unwrap()).collect();
    assert_eq!(computed, [12, 60, 150, 288, 470, 696, 980]);
}

#[test]
fn audit_fixtures() {
    let out = run(&["audit", fixture("shor9.stab").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_valid("audit.schema.json", &doc);
    assert_eq!(doc["analysis"]["degenerate"], Value::Bool(true));
    assert_eq!(doc["analysis"]["profile"]["ell"], 6);
    assert_eq!(doc["analysis"]["profile"]["sigma"], 12);

    let out = run(&["audit", fixture("five_qubit.stab").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_valid("audit.schema.json", &doc);
    assert_eq!(doc["analysis"]["degenerate"], Value::Bool(false));

    let out = run(&["audit", fixture("six_qubit_ext.stab").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_valid("audit.schema.json", &doc);
    assert_eq!(doc["analysis"]["min_stabilizer_weight"], 1);
}

#[test]
fn audit_malformed_file_exits_two_with_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.stab");
    std::fs::write(&path, "XZZXI\nIXQZX\n").unwrap();
    let out = run(&["audit", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("line 2"), "stderr: {msg}");

    let out = run(&["audit", dir.path().join("missing.stab").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_red_set() {
    let out = run(&["classify"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_valid("classify.schema.json", &doc);
    let red: Vec<u64> = doc["points"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|p| p["color"] == "red")
        .map(|p| p["n"].as_u64().unwrap())
        .collect();
    assert_eq!(red, [6, 7, 9, 10, 11, 12, 18, 19, 20, 22, 23]);
}

#[test]
fn classify_csv_shape() {
    let out = run(&["classify", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,optimal_k,degenerate_max_k,allowed,color"));
    assert_eq!(lines.count(), 21);
}

#[test]
fn cross_check_flags_six_only() {
    let out = run(&["cross-check"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_valid("cross-check.schema.json", &doc);
    let only_direct: Vec<u64> = doc["only_direct"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["n"].as_u64().unwrap())
        .collect();
    assert_eq!(only_direct, [6]);
    assert_eq!(doc["only_family"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_appendix_passes_and_validates() {
    let out = run(&["verify-appendix", "--t-max", "3", "--x-max", "60"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_valid("verify-appendix.schema.json", &doc);
    assert_eq!(doc["all_pass"], Value::Bool(true));
    let approxes: Vec<&str> = doc["spot_values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["approx"].as_str().unwrap())
        .collect();
    assert_eq!(approxes, ["-3.328", "-0.488"]);

    let out = run(&["verify-appendix", "--t-max", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn figures_are_emitted_and_deterministic() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for which in ["1", "2", "3"] {
        for dir in [&dir_a, &dir_b] {
            let out = run(&["figure", "--which", which, "--out-dir", dir.path().to_str().unwrap()]);
            assert_eq!(out.status.code(), Some(0));
        }
    }
    let files = ["figure1.tsv", "figure2.tsv", "figure3_curves.tsv", "figure3_points.tsv"];
    for name in files {
        let a = std::fs::read(dir_a.path().join(name)).unwrap();
        let b = std::fs::read(dir_b.path().join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between runs");
        assert!(!a.is_empty());
    }
    // Figure 3 points carry the exact classification.
    let points = std::fs::read_to_string(dir_a.path().join("figure3_points.tsv")).unwrap();
    let reds = points.lines().filter(|l| l.ends_with("\tred")).count();
    assert_eq!(reds, 11);
    assert_eq!(points.lines().filter(|l| l.ends_with("\tblack")).count(), 10);
}

#[test]
fn json_output_is_deterministic() {
    for args in [
        vec!["bound", "-n", "9", "-k", "1", "-d", "3", "--ell", "6", "--sigma", "12"],
        vec!["thresholds", "-t", "2"],
        vec!["classify"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "args: {args:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bound.json");
    let out = run(&["bound", "-n", "5", "-k", "1", "-d", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(doc["all_hold"], Value::Bool(true));
}

#[test]
fn nested_reports_refuse_csv() {
    let out = run(&["thresholds", "-t", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}
