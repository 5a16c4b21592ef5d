use std::process::{Command, Output};

use quotcoh::algebra::parse;
use quotcoh::{RingContext, XiEngine, WeightVector};
use serde_json::Value;

fn quotcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quotcoh")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = quotcoh(&all);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&out)))
}

#[test]
fn xi_prints_canonical_form() {
    let out = quotcoh(&["xi", "--v", "0,2", "--genus", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let ctx = RingContext::new(0, 2);
    let expected = parse(&ctx, "1 * [one|one] w^(0,2) + 1 * [pt|one] w^(1,0) + 1 * [one|pt] w^(1,0) + 1 * [pt|one] w^(0,1) + 1 * [one|pt] w^(0,1)").unwrap();
    assert_eq!(stdout(&out).trim(), expected.to_string());
}

#[test]
fn json_elements_round_trip() {
    let ctx = RingContext::new(1, 3);
    let v = json(&["xi", "--v", "1,0,2", "--genus", "1"]);
    let text = v["value"].as_str().unwrap();
    let engine = XiEngine::new(&ctx);
    assert_eq!(parse(&ctx, text).unwrap(), engine.xi(&WeightVector(vec![1, 0, 2])).unwrap());
    let p = json(&["psi", "--u", "1,1,0", "--a", "[pt|one|one]", "--genus", "1"]);
    assert_eq!(p["agree"], true);
    assert_eq!(p["averaged"], true);
    let r = parse(&ctx, p["recursion"].as_str().unwrap()).unwrap();
    assert_eq!(r.to_string(), p["combinatorial"].as_str().unwrap());
}

#[test]
fn rank_bound_is_a_usage_error() {
    let out = quotcoh(&["xi", "--v", "0,2", "--rank", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("entry 2 out of range for rank 1"));
    assert_eq!(quotcoh(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(quotcoh(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(quotcoh(&["restrict", "--v", "0,1", "--w", "1,1"]).status.code(), Some(2));
}

#[test]
fn strict_mode_rejects_asymmetric_class() {
    let out = quotcoh(&["psi", "--u", "1,1", "--a", "[pt|one]", "--strict"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pullback_suite_passes() {
    let out = quotcoh(&["verify", "--suite", "pullback", "--n", "2", "--genus", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).starts_with("pullback: PASS"));
}

#[test]
fn failing_identity_exits_one_with_counterexample() {
    let out = quotcoh(&["verify", "--suite", "recursion", "--n", "3", "--genus", "0", "--max-co", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("first counterexample"), "{text}");
    let report = json(&["verify", "--suite", "recursion", "--n", "3", "--genus", "0", "--max-co", "2"]);
    let first = report["summary"]["first_failure"].as_u64().unwrap() as usize;
    let case = &report["cases"][first];
    assert_eq!(case["pass"], false);
    let ctx = RingContext::new(0, 3);
    assert!(!parse(&ctx, case["got"].as_str().unwrap()).unwrap().is_zero());
}

#[test]
fn seeded_reports_are_identical() {
    let args = ["verify", "--suite", "recursion", "--genus", "0", "--max-co", "2", "--seed", "11", "--random-cases", "8", "--format", "json"];
    let a = quotcoh(&args);
    let b = quotcoh(&args);
    assert_eq!(a.stdout, b.stdout);
    let report: Value = serde_json::from_slice(&a.stdout).unwrap();
    for key in ["suite", "cases", "summary"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn restrict_and_poincare() {
    let r = json(&["restrict", "--v", "0,1", "--w", "1,2", "--rank", "3"]);
    assert_eq!(r["t_degree"], 1);
    let q = json(&["poincare", "quot", "--r", "2", "--length", "3", "--genus", "1", "--max-t", "12"]);
    let coeffs: Vec<i64> = serde_json::from_value(q["coefficients"].clone()).unwrap();
    assert_eq!(coeffs, vec![1, 2, 3, 6, 10, 14, 16, 14, 10, 6, 3, 2, 1]);
    let s = json(&["poincare", "sym", "--m", "2", "--genus", "1"]);
    assert_eq!(s["coefficients"], serde_json::json!([1, 2, 2, 2, 1]));
    let out = quotcoh(&["poincare", "limit", "--max-t", "6"]);
    assert_eq!(out.status.code(), Some(0));
}
