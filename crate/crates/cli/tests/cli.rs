use std::fs;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/golden")
        .join(name);
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_spslab"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "structured"];
    full.extend_from_slice(args);
    let (code, out) = run(&full);
    (
        code,
        serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")),
    )
}

#[test]
fn decompose_of_connected_system_has_one_component() {
    let (code, v) = structured(&["decompose", &golden("e3.sps")]);
    assert_eq!(code, 0);
    assert_eq!(v["ok"], true);
    assert_eq!(v["command"], "decompose");
    let comps = v["result"]["components"].as_array().unwrap();
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0]["omega"], serde_json::json!(["x1", "x2", "x3"]));
    assert_eq!(comps[0]["pure_nonclassical"], true);
}

#[test]
fn components_of_e2() {
    let (code, v) = structured(&["components", &golden("e2.cls")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], serde_json::json!([["x1"], ["x2", "x3"]]));
}

#[test]
fn counterexample_exits_one() {
    let (code, v) = structured(&["totally-classical", &golden("quotient_counterexample.cls")]);
    assert_eq!(code, 1);
    assert_eq!(v["ok"], false);
}

#[test]
fn axiom_errors_carry_violations() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cls");
    fs::write(
        &path,
        r#"{"version":1,"kind":"closure-space","points":["x1","x2","x3"],
           "closed_sets":[[],["x1","x2"],["x2","x3"],["x1","x2","x3"]]}"#,
    )
    .unwrap();
    let (code, v) = structured(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "axiom");
    assert!(v["error"]["violations"]
        .to_string()
        .contains("intersection-closed"));
}

#[test]
fn missing_file_is_a_usage_error() {
    let (code, v) = structured(&["validate", "/nonexistent/space.cls"]);
    assert_eq!(code, 2);
    assert!(v["error"].is_object());
}

#[test]
fn to_closure_inverts_to_sps() {
    let dir = tempfile::tempdir().unwrap();
    let (code, sps) = run(&["to-sps", &golden("e4.cls")]);
    assert_eq!(code, 0);
    let path = dir.path().join("e4.sps");
    fs::write(&path, sps).unwrap();
    let (code, cls) = run(&["to-closure", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(
        cls.trim_end(),
        fs::read_to_string(golden("e4.cls")).unwrap().trim_end()
    );
}

#[test]
fn random_is_deterministic() {
    let args = ["random", "--n", "5", "--density", "0.4", "--seed", "7"];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn check_theorems_over_enumeration() {
    let (code, v) = structured(&["check-theorems", "--enumerate", "2"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["ok"], true);
}
