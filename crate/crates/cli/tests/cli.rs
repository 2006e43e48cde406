use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ipgap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ipgap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn analyze_knapsack() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "k.json", r#"{"A": [[2, 3]], "b": [5], "c": [1, 0]}"#);
    let out = ipgap(&["analyze", &file]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let report = &doc["report"];
    assert_eq!(report["gap"], "1");
    let prox = report["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .find(|b| b["name"] == "proximity-gap")
        .unwrap();
    assert_eq!(prox["value"], "2.605552↑");
    assert_eq!(prox["verdict"], "satisfied");
    assert_eq!(report["ip"]["z"], serde_json::json!([1, 1]));
    assert_eq!(report["lp"]["x"], serde_json::json!(["0", "5/3"]));
    assert_eq!(doc["improving_point"]["witness"], Value::Null);
    assert_eq!(doc["proximity"]["violations"], 0);
}

#[test]
fn analyze_writes_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "k.json", r#"{"A": [[3, 5, 7]], "b": [11], "c": [1, 0, 0]}"#);
    let out_path = dir.path().join("r.json");
    let out = ipgap(&["analyze", &file, "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(doc["report"]["gap"], "2");
}

#[test]
fn analyze_failures_have_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let infeasible = write(dir.path(), "i.json", r#"{"A": [[2, 2]], "b": [3], "c": [1, 0]}"#);
    let out = ipgap(&["analyze", &infeasible]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["report"]["status"], "infeasible");

    let lp_infeasible = write(dir.path(), "j.json", r#"{"A": [[1, 1]], "b": [-1], "c": [1, 0]}"#);
    assert_eq!(ipgap(&["analyze", &lp_infeasible]).status.code(), Some(3));

    let unbounded = write(dir.path(), "u.json", r#"{"A": [[1, -1]], "b": [0], "c": [-1, 0]}"#);
    let out = ipgap(&["analyze", &unbounded]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["report"]["status"], "unbounded");

    let short_c = write(dir.path(), "c.json", r#"{"A": [[2, 3]], "b": [5], "c": [1]}"#);
    let out = ipgap(&["analyze", &short_c]);
    assert_eq!(out.status.code(), Some(2));
    let err = &json(&out)["error"];
    assert_eq!(err["kind"], "parse");
    assert!(err["message"].as_str().unwrap().contains('c'));

    let float = write(dir.path(), "f.json", r#"{"A": [[2.5, 3]], "b": [5], "c": [1, 0]}"#);
    let out = ipgap(&["analyze", &float]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["error"]["message"].as_str().unwrap().contains("A[0][0]"));

    assert_eq!(ipgap(&["analyze", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(ipgap(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ipgap(&["generate", "--m", "x"]).status.code(), Some(2));
}

#[test]
fn generate_is_deterministic() {
    let args = ["generate", "--seed", "1", "--count", "3", "--m", "1", "--n", "3"];
    let a = ipgap(&args);
    let b = ipgap(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    let instances = doc["instances"].as_array().unwrap();
    assert_eq!(instances.len(), 3);
    for inst in instances {
        let row = inst["A"][0].as_array().unwrap();
        assert_eq!(row.len(), 3);
        assert!(row.iter().all(|x| x.as_i64().unwrap().abs() <= 5));
    }
}

#[test]
fn generated_manifest_certifies() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.json");
    let gen = ipgap(&[
        "generate",
        "--seed",
        "4",
        "--count",
        "5",
        "--out",
        manifest.to_str().unwrap(),
    ]);
    assert_eq!(gen.status.code(), Some(0));
    let out = ipgap(&["certify", "--manifest", manifest.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["instances"], 5);
    assert_eq!(doc["passed"], 5);
    assert_eq!(
        out.stdout,
        ipgap(&["certify", "--manifest", manifest.to_str().unwrap()]).stdout
    );
}

#[test]
fn certify_single_instance_and_caps() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write(
        dir.path(),
        "m.json",
        r#"{"instances": [{"A": [[2, 3]], "b": [5], "c": [1, 0], "name": "knapsack"}]}"#,
    );
    let out = ipgap(&["certify", "--manifest", &manifest]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!((doc["instances"].as_u64(), doc["passed"].as_u64()), (Some(1), Some(1)));

    let out = ipgap(&["certify", "--count", "20", "--node-cap", "10"]);
    assert_eq!(out.status.code(), Some(4));
    let doc = json(&out);
    assert!(doc["budget_exceeded"].as_u64().unwrap() > 0);
    assert_eq!(doc["violations"], 0);
}

#[test]
fn verify_geometry_small() {
    let args = [
        "verify-geometry",
        "--dims",
        "2",
        "--samples",
        "20000",
        "--seed",
        "3",
        "--sections",
        "20",
    ];
    let a = ipgap(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, ipgap(&args).stdout);
    assert_eq!(json(&a)["passed"], true);

    let out = ipgap(&["verify-geometry", "--dims", "2", "--samples", "0", "--sections", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("skipped"));
    assert!(json(&out)["box_slices"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "skipped"));
}
