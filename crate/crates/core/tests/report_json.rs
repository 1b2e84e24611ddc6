//! Report serialization.

use fockcheck::checks::{sector_dimension_check, winf_check};
use fockcheck::scalar::HalfInteger;
use serde_json::Value;

fn without_timing(json: &str) -> Value {
    let mut v: Value = serde_json::from_str(json).unwrap();
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn json_is_deterministic_apart_from_timing() {
    let a = sector_dimension_check(2, 4).to_json();
    let b = sector_dimension_check(2, 4).to_json();
    assert_eq!(without_timing(&a), without_timing(&b));
    let v: Value = serde_json::from_str(&a).unwrap();
    for key in ["check", "params", "cases_run", "failures", "elapsed_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn parallel_runs_agree() {
    let cut = HalfInteger::from_int(4);
    let a = winf_check(1, 2, 2, cut).to_json();
    let b = winf_check(1, 2, 2, cut).to_json();
    assert_eq!(without_timing(&a), without_timing(&b));
}
