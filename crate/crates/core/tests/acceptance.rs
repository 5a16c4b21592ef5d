//! Acceptance criteria at their stated bounds. Each test prints one
//! `A<k> PASS|FAIL` line; run with `--nocapture` to see them.

use std::sync::OnceLock;
use std::time::Instant;

use quotcoh::verify::{run, Case, Config, Report, Suite};

fn suite(s: Suite) -> Report {
    run(s, &Config::default()).unwrap_or_else(|e| panic!("{s} suite errored: {e}"))
}

fn pullback_report() -> &'static Report {
    static R: OnceLock<Report> = OnceLock::new();
    R.get_or_init(|| suite(Suite::Pullback))
}

fn ranks_report() -> &'static Report {
    static R: OnceLock<Report> = OnceLock::new();
    R.get_or_init(|| suite(Suite::Ranks))
}

fn verdict<'a>(label: &str, start: Instant, cases: impl IntoIterator<Item = &'a Case>) {
    let cases: Vec<&Case> = cases.into_iter().collect();
    let failed: Vec<&&Case> = cases.iter().filter(|c| !c.pass).collect();
    let status = if failed.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "{label} {status} ({}/{} cases, {:.1}s)",
        cases.len() - failed.len(),
        cases.len(),
        start.elapsed().as_secs_f64()
    );
    if let Some(c) = failed.first() {
        println!("  first counterexample: {}\n  expected: {}\n  got:      {}", c.inputs, c.expected, c.got);
    }
    assert!(!cases.is_empty(), "{label}: no cases ran");
    assert!(failed.is_empty(), "{label}: {} of {} cases failed", failed.len(), cases.len());
}

#[test]
fn a1_oracle_equivalence() {
    let t = Instant::now();
    verdict("A1", t, pullback_report().cases_of("oracle"));
}

#[test]
fn a2_generating_function() {
    let t = Instant::now();
    verdict("A2", t, &suite(Suite::Generating).cases);
}

#[test]
fn a3_cross_index_identity() {
    let t = Instant::now();
    let report = suite(Suite::Recursion);
    let sampled = report.cases_of("stated").filter(|c| c.inputs["n"] == 4).count();
    assert_eq!(sampled, 200);
    verdict("A3", t, report.cases_of("stated"));
}

/// Not a criterion: the sign-corrected identity summed over every
/// transposition, on the same grid.
#[test]
fn a3_any_index_form() {
    let t = Instant::now();
    verdict("A3 (any-index form)", t, suite(Suite::Recursion).cases_of("any_index"));
}

#[test]
fn a4_diagonal_calculus() {
    let t = Instant::now();
    verdict("A4", t, &suite(Suite::Diagonal).cases);
}

#[test]
fn a5_rho_invariance_and_rank() {
    let t = Instant::now();
    let rho = pullback_report().cases_of("rho");
    verdict("A5", t, rho.chain(ranks_report().cases_of("rank")));
}

#[test]
fn a6_localization() {
    let t = Instant::now();
    verdict("A6", t, &suite(Suite::Localization).cases);
}

#[test]
fn a7_series() {
    let t = Instant::now();
    verdict("A7", t, &suite(Suite::Series).cases);
}

#[test]
fn a8_structure() {
    let t = Instant::now();
    verdict("A8", t, &suite(Suite::Structure).cases);
}

#[test]
fn a9_generators() {
    let t = Instant::now();
    verdict("A9", t, ranks_report().cases_of("generators"));
}
