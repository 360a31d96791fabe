use std::process::{Command, Output};

use serde_json::Value;

use momentcone::verification::Report;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_momentcone"))
        .args(args)
        .env_remove("MOMENTCONE_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn rays(doc: &Value) -> Vec<Value> {
    doc["cone"]["rays"].as_array().unwrap().clone()
}

#[test]
fn models_listing() {
    let out = run(&["models"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 1 + 4);
    let doc = json(&["models", "--format", "json"]);
    let models = doc["models"].as_array().unwrap();
    assert_eq!(models.len(), 4);
    assert!(models.iter().all(|m| m["dimension"].is_u64() && m["group"].is_string()));
    assert_eq!(run(&["models", "--bogus"]).status.code(), Some(2));
}

#[test]
fn compute_examples() {
    let doc = json(&["compute", "moment-cone", "pgl2_wonderful", "--bound", "4"]);
    assert_eq!(rays(&doc).len(), 5);
    assert_eq!(doc["points"].as_array().unwrap().len(), 70);
    assert_eq!(doc["points"][0], serde_json::json!([["0", "0", "0"], ["0"], ["0", "0"]]));

    let doc = json(&["compute", "cone", "p1_sl2", "--bound", "2"]);
    assert_eq!(rays(&doc), vec![serde_json::json!(["0", "1"]), serde_json::json!(["1", "1"])]);

    let doc = json(&["compute", "KY", "pgl2_wonderful", "--bound", "3"]);
    assert_eq!(rays(&doc), vec![serde_json::json!(["1", "1", "1", "1"])]);

    assert_eq!(run(&["compute", "K", "p1_sl2"]).status.code(), Some(3));
    assert_eq!(run(&["compute", "cone", "no_such_model"]).status.code(), Some(2));
}

#[test]
fn slice_examples() {
    let doc = json(&["slice", "pgl2_wonderful", "--divisor", "1", "--body", "okounkov"]);
    assert_eq!(doc["polytope"]["vertices"].as_array().unwrap().len(), 5);
    assert_eq!(doc["polytope"]["volume"], "1/6");
    let doc = json(&["slice", "pgl2_wonderful", "--divisor", "1", "--body", "moment"]);
    assert_eq!(doc["polytope"]["vertices"], serde_json::json!([["0", "0"], ["1", "1"]]));
    assert_eq!(run(&["slice", "pgl2_wonderful", "--divisor", "-1"]).status.code(), Some(3));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", "all", "--bound", "4"]).status.code(), Some(0));
    let out = run(&["verify", "pgl2_wonderful", "--checks", "inductive", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["reports"].as_array().unwrap().len(), 1);
    assert!(doc["header"].as_str().unwrap().contains("not a proof"));
    assert_eq!(run(&["verify", "p1_sl2", "--checks", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic_and_round_trip() {
    let args = ["verify", "pgl2_wonderful", "--bound", "3", "--format", "json"];
    let a = run(&args).stdout;
    assert_eq!(a, run(&args).stdout);
    let doc: Value = serde_json::from_slice(&a).unwrap();
    let reports: Vec<Report> = serde_json::from_value(doc["reports"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&reports).unwrap(), doc["reports"]);
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_momentcone"))
        .args(["compute", "cone", "p1_sl2", "--bound", "2"])
        .env("MOMENTCONE_OUTPUT_DIR", dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let written = std::fs::read_to_string(dir.path().join("p1_sl2-cone-b2.json")).unwrap();
    let doc: Value = serde_json::from_str(&written).unwrap();
    assert_eq!(doc["model"], "p1_sl2");

    let explicit = dir.path().join("explicit.json");
    let status = Command::new(env!("CARGO_BIN_EXE_momentcone"))
        .args(["slice", "p1_sl2", "--divisor", "3", "--output"])
        .arg(&explicit)
        .status()
        .unwrap();
    assert!(status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(explicit).unwrap()).unwrap();
    assert_eq!(doc["polytope"]["volume"], "3");
}
