use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn jsr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jsr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_input(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("jsr-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

const PAIR: &str = r#"{"dim":2,"matrices":[[[1,1],[0,1]],[[1,0],[1,1]]]}"#;

#[test]
fn envelope_has_the_expected_keys() {
    let p = write_input("pair.json", PAIR);
    let v = json(&jsr(&[
        "bound",
        "--input",
        p.to_str().unwrap(),
        "--n-max",
        "4",
    ]));
    for key in ["command", "input_digest", "params", "result", "warnings"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["command"], "bound");
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn zero_test_and_plan() {
    let nil = write_input(
        "nil.json",
        r#"{"dim":3,"matrices":[[[0,1,2],[0,0,3],[0,0,0]],[[0,0,1],[0,0,0],[0,0,0]]]}"#,
    );
    let v = json(&jsr(&["zero-test", "--input", nil.to_str().unwrap()]));
    assert_eq!(v["result"]["zero_radius"], true);
    let p = write_input("pair.json", PAIR);
    let v = json(&jsr(&["zero-test", "--input", p.to_str().unwrap()]));
    assert_eq!(v["result"]["zero_radius"], false);

    let v = json(&jsr(&["plan", "--nu", "1.4142135", "--epsilon", "0.1"]));
    assert_eq!(v["result"]["n"], 4);
}

#[test]
fn example_v_on_the_swap_matrix() {
    let a = write_input("swap.json", "[[0,1],[1,0]]");
    let v = json(&jsr(&["example", "v", "--input", a.to_str().unwrap()]));
    assert_eq!(v["result"]["bound"]["chi_lower"], 0.5);
    assert_eq!(v["result"]["set"]["matrices"].as_array().unwrap().len(), 3);
}

#[test]
fn certify_contains_the_golden_ratio() {
    let p = write_input("pair.json", PAIR);
    let v = json(&jsr(&[
        "certify",
        "--input",
        p.to_str().unwrap(),
        "--n",
        "6",
    ]));
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    let ci = &v["result"]["interval"];
    let (lo, hi) = (ci["lower"].as_f64().unwrap(), ci["upper"].as_f64().unwrap());
    assert!(lo <= golden && golden <= hi, "{ci}");
    assert_eq!(v["result"]["chi"]["certified"], true);
}

#[test]
fn output_file_matches_stdout() {
    let p = write_input("pair.json", PAIR);
    let out = p.with_file_name("out.json");
    let stdout = jsr(&["kronecker", "--input", p.to_str().unwrap(), "--n", "2"]);
    let to_file = jsr(&[
        "kronecker",
        "--input",
        p.to_str().unwrap(),
        "--n",
        "2",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(to_file.status.success());
    assert_eq!(std::fs::read(&out).unwrap(), stdout.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(
        jsr(&["bound", "--input", "/nonexistent/set.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(jsr(&["bound", "--bogus"]).status.code(), Some(2));
    let p = write_input("pair.json", PAIR);
    assert_eq!(
        jsr(&["chi", "--input", p.to_str().unwrap(), "--mesh", "0"])
            .status
            .code(),
        Some(2)
    );
    let bad = write_input("ragged.json", r#"{"dim":2,"matrices":[[[1,2]]]}"#);
    let out = jsr(&["bound", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}
