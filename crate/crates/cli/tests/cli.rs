//! End-to-end tests of the binary and its exit codes.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fockcheck")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn clifford_passes() {
    let o = run(&["verify", "clifford", "--max-index", "15/2", "--weight-cut", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn jacobi_passes() {
    for which in ["DA", "A"] {
        assert_eq!(run(&["jacobi", "--which", which, "--qmax", "12"]).status.code(), Some(0));
    }
}

#[test]
fn character_json_records() {
    let o = run(&["character", "--qmax", "5", "--form", "trace", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let records: Vec<Value> = serde_json::from_str(stdout(&o).trim()).unwrap();
    let target = serde_json::json!({ "z": -1, "qhalf": 1, "coeff": 1 });
    assert!(records.contains(&target));
    let product = run(&["character", "--qmax", "5", "--form", "product", "--json"]);
    assert_eq!(stdout(&product), stdout(&o));
}

#[test]
fn apply_examples() {
    let cases = [("h[0] phi[-5/2] |0>", "-1 phi[-5/2] |0>"), ("Lhalf[0] |0>", "0"), ("h[-1] |0>", "1 phi[-3/2] phi[-1/2] |0>")];
    for (expr, expected) in cases {
        let o = run(&["apply", expr]);
        assert_eq!(o.status.code(), Some(0), "{expr}");
        assert_eq!(stdout(&o).trim(), expected);
    }
}

#[test]
fn printed_states_reparse() {
    for expr in ["L1[-2] phi[-3/2] |0>", "J[2,-3] phi[-1/2] |0>", "LA[1/2,1/3;-2] psi+[-1] |0>"] {
        let first = stdout(&run(&["apply", expr]));
        let again = stdout(&run(&["apply", first.trim()]));
        assert_eq!(first, again, "{expr}");
    }
}

#[test]
fn wrong_central_charge_fails() {
    let o = run(&["verify", "virasoro", "--family", "half", "--c", "1", "--mmax", "2", "--weight-cut", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL"));
}

#[test]
fn lambda_family_passes() {
    let o = run(&["verify", "virasoro", "--family", "lambda", "--lambda", "1/3", "--b", "2/5", "--mmax", "2", "--weight-cut", "4"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    let bad: [&[&str]; 6] = [
        &["apply", "foo[1] |0>"],
        &["verify", "clifford", "--weight-cut", "0.5"],
        &["verify", "virasoro", "--family", "lambda", "--lambda", "1/3"],
        &["verify", "virasoro", "--family", "half", "--c", "0.5"],
        &["jacobi", "--which", "B"],
        &["frobnicate"],
    ];
    for args in bad {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn json_reports_and_out_file() {
    let dir = std::env::temp_dir().join(format!("fockcheck-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = run(&["--json", "--jobs", "1", "--out", path.to_str().unwrap(), "verify", "identities", "--mmax", "2", "--weight-cut", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    for line in text.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn decompose_rows_match() {
    let o = run(&["decompose", "--nmax", "2", "--kmax", "5", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 5 * 6);
    assert!(rows.iter().all(|r| r["match"] == true));
}
