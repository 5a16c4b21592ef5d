//! Named verification suites with machine-readable reports.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Degree, Rank, RingContext, RingElement};
use crate::combinatorics::{enumerate_b, Perm, SubsetTuple, TConvention, WeightVector};
use crate::poincare::{
    decomposition_dimension_check, filt_presentation_check, infinite_limits_check, quot_series_check,
    sym_prod_by_projector, sym_prod_poincare,
};
use crate::quot::{
    curve_monomials, diagonal_product, diagonal_product_classified, generator_span_check, psi_pullback,
    psi_pullback_combinatorial, rank_equality_check, rho_invariance_check, DegreeRank, InvariantMode,
};
use crate::restriction::{check_degree_bound, check_top_term, check_top_term_converse, check_vanishing};
use crate::xi::XiEngine;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Recursion,
    Generating,
    Pullback,
    Diagonal,
    Ranks,
    Localization,
    Series,
    Structure,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Pullback,
        Suite::Generating,
        Suite::Recursion,
        Suite::Diagonal,
        Suite::Ranks,
        Suite::Localization,
        Suite::Series,
        Suite::Structure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Recursion => "recursion",
            Suite::Generating => "generating",
            Suite::Pullback => "pullback",
            Suite::Diagonal => "diagonal",
            Suite::Ranks => "ranks",
            Suite::Localization => "localization",
            Suite::Series => "series",
            Suite::Structure => "structure",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::precondition(format!("unknown suite {s:?}")))
    }
}

/// Bounds for a suite run. `None` fields fall back to the acceptance bounds
/// of the suite.
#[derive(Clone, Debug)]
pub struct Config {
    pub n: Option<usize>,
    pub genera: Option<Vec<u32>>,
    pub rank: Option<u32>,
    pub max_co: Option<u32>,
    pub max_degree: Option<u32>,
    pub seed: u64,
    pub random_cases: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            n: None,
            genera: None,
            rank: None,
            max_co: None,
            max_degree: None,
            seed: 0,
            random_cases: 200,
        }
    }
}

impl Config {
    fn genera(&self, default: &[u32]) -> Vec<u32> {
        self.genera.clone().unwrap_or_else(|| default.to_vec())
    }

    fn sizes(&self, default: &[usize]) -> Vec<usize> {
        self.n.map_or_else(|| default.to_vec(), |n| vec![n])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case {
    pub inputs: Value,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub cases: Vec<Case>,
    pub summary: Summary,
}

impl Report {
    fn new(suite: Suite, cases: Vec<Case>) -> Self {
        let passed = cases.iter().filter(|c| c.pass).count();
        Report {
            suite: suite.name().to_owned(),
            summary: Summary {
                total: cases.len(),
                passed,
                failed: cases.len() - passed,
                first_failure: cases.iter().position(|c| !c.pass),
            },
            cases,
        }
    }

    pub fn pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn first_failure(&self) -> Option<&Case> {
        self.summary.first_failure.map(|i| &self.cases[i])
    }

    /// Cases whose `check` input equals `check`.
    pub fn cases_of<'a>(&'a self, check: &'a str) -> impl Iterator<Item = &'a Case> + 'a {
        self.cases.iter().filter(move |c| c.inputs.get("check").and_then(Value::as_str) == Some(check))
    }

    /// One summary line plus the first counterexample, if any.
    pub fn render_text(&self) -> String {
        let s = &self.summary;
        let mut out = format!(
            "{}: {} {}/{} passed\n",
            self.suite,
            if self.pass() { "PASS" } else { "FAIL" },
            s.passed,
            s.total
        );
        if let Some(c) = self.first_failure() {
            out.push_str(&format!("  first counterexample: {}\n", c.inputs));
            out.push_str(&format!("  expected: {}\n", c.expected));
            out.push_str(&format!("  got:      {}\n", c.got));
        }
        out
    }
}

fn residual_case(inputs: Value, residual: &RingElement) -> Case {
    Case {
        inputs,
        expected: "0".into(),
        got: residual.to_string(),
        pass: residual.is_zero(),
    }
}

fn equality_case(inputs: Value, expected: impl ToString, got: impl ToString) -> Case {
    let (expected, got) = (expected.to_string(), got.to_string());
    Case {
        pass: expected == got,
        inputs,
        expected,
        got,
    }
}

fn flag_case(inputs: Value, holds: bool) -> Case {
    equality_case(inputs, true, holds)
}

fn rank_cases(check: &str, base: Value, report: Vec<DegreeRank>) -> Vec<Case> {
    report
        .into_iter()
        .map(|r| {
            let mut inputs = base.clone();
            inputs["check"] = json!(check);
            inputs["degree"] = json!(r.degree);
            equality_case(inputs, r.expected, r.span_rank)
        })
        .collect()
}

fn poly_case(inputs: Value, residual: &[i64]) -> Case {
    let got = format!("{residual:?}");
    Case {
        pass: residual.iter().all(|&c| c == 0),
        inputs,
        expected: "0".into(),
        got,
    }
}

pub fn run(suite: Suite, config: &Config) -> Result<Report> {
    let cases = match suite {
        Suite::Pullback => pullback(config)?,
        Suite::Generating => generating(config)?,
        Suite::Recursion => recursion(config)?,
        Suite::Diagonal => diagonal(config)?,
        Suite::Ranks => ranks(config)?,
        Suite::Localization => localization(config)?,
        Suite::Series => series(config)?,
        Suite::Structure => structure(config)?,
    };
    Ok(Report::new(suite, cases))
}

pub fn run_all(config: &Config) -> Result<Vec<Report>> {
    Suite::ALL.into_iter().map(|s| run(s, config)).collect()
}

fn default_max_co(n: usize) -> u32 {
    if n >= 4 {
        3
    } else {
        4
    }
}

/// Combinatorial formula against symmetrization, plus `ρ`-invariance of each
/// output. Classes `a` run over a basis of `St(u)`-invariants of degree `≤ 4`.
fn pullback(config: &Config) -> Result<Vec<Case>> {
    let max_degree = config.max_degree.unwrap_or(4);
    let mut cases = Vec::new();
    for n in config.sizes(&[2, 3, 4]) {
        let max_co = config.max_co.unwrap_or_else(|| default_max_co(n));
        for g in config.genera(&[0, 1, 2]) {
            let ctx = RingContext::new(g, n);
            let engine = XiEngine::new(&ctx);
            let monomials = curve_monomials(&ctx, |d| d <= max_degree);
            for u in enumerate_b(n, None, Some(max_co))? {
                let stab = Perm::stabilizer(u.entries());
                let basis = crate::linalg::independent_subset(
                    monomials.iter().map(|m| m.project_invariant(&stab)).collect(),
                );
                for a in basis {
                    let oracle = psi_pullback(&engine, &u, &a, InvariantMode::Strict)?.value;
                    let formula =
                        psi_pullback_combinatorial(&ctx, &u, &a, InvariantMode::Strict, TConvention::default())?.value;
                    let inputs = json!({"n": n, "genus": g, "u": u, "a": a.to_string()});
                    let mut oracle_inputs = inputs.clone();
                    oracle_inputs["check"] = json!("oracle");
                    cases.push(equality_case(oracle_inputs, &oracle, &formula));
                    let mut rho_inputs = inputs;
                    rho_inputs["check"] = json!("rho");
                    cases.push(flag_case(rho_inputs, rho_invariance_check(&formula)));
                }
            }
        }
    }
    Ok(cases)
}

/// `Σ_l ξ(l e_i) t^l` against its closed form up to `t^L`.
fn generating(config: &Config) -> Result<Vec<Case>> {
    let max_l = config.max_co.unwrap_or(6);
    let mut cases = Vec::new();
    for n in config.sizes(&[1, 2, 3, 4]) {
        for g in config.genera(&[0, 1, 2]) {
            let ctx = RingContext::new(g, n);
            let engine = XiEngine::new(&ctx);
            for i in 1..=n {
                let series = engine.pn_series(i, max_l)?;
                let closed = engine.pn_closed_form(i, max_l)?;
                for (l, (x, y)) in series.iter().zip(&closed).enumerate() {
                    let inputs = json!({"n": n, "genus": g, "i": i, "l": l});
                    cases.push(residual_case(inputs, &(x - y)));
                }
            }
        }
    }
    Ok(cases)
}

/// Weights with `co ≤ max_co` and nonzero last entry.
fn recursion_grid(n: usize, max_co: u32) -> Vec<WeightVector> {
    WeightVector::all_with_co(n, max_co)
        .into_iter()
        .filter(|v| v.entries().last().is_some_and(|&x| x > 0))
        .collect()
}

/// The cross-index identity as stated (`check = "stated"`), exhaustively for
/// small `n` and on a seeded random sample at the next size, together with
/// the any-index form (`check = "any_index"`) on the exhaustive grid.
fn recursion(config: &Config) -> Result<Vec<Case>> {
    let max_co = config.max_co.unwrap_or(4);
    let genera = config.genera(&[0, 1, 2]);
    let mut cases = Vec::new();
    let check = |engine: &XiEngine, v: &WeightVector, m: usize| -> Result<Case> {
        let residual = engine.check_increment_lower_index(v, m, false)?;
        let inputs = json!({"check": "stated", "n": v.len(), "genus": engine.ctx().genus(), "v": v, "m": m});
        Ok(residual_case(inputs, &residual))
    };
    let any_index = |engine: &XiEngine, v: &WeightVector, m: usize| -> Result<Case> {
        let residual = engine.check_increment_any_index(v, m, false)?;
        let inputs = json!({"check": "any_index", "n": v.len(), "genus": engine.ctx().genus(), "v": v, "m": m});
        Ok(residual_case(inputs, &residual))
    };
    let exhaustive = config.sizes(&[2, 3]);
    for &n in &exhaustive {
        for &g in &genera {
            let engine = XiEngine::new(&RingContext::new(g, n));
            for v in recursion_grid(n, max_co) {
                for m in 1..n {
                    cases.push(check(&engine, &v, m)?);
                }
                for m in 1..=n {
                    cases.push(any_index(&engine, &v, m)?);
                }
            }
        }
    }
    if config.n.is_none() && config.random_cases > 0 {
        let n = 4;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut pool: Vec<(u32, WeightVector, usize)> = Vec::new();
        for &g in &genera {
            for v in recursion_grid(n, max_co) {
                for m in 1..n {
                    pool.push((g, v.clone(), m));
                }
            }
        }
        let mut sample: Vec<_> = pool.choose_multiple(&mut rng, config.random_cases).cloned().collect();
        sample.sort();
        let engines: Vec<(u32, XiEngine)> =
            genera.iter().map(|&g| (g, XiEngine::new(&RingContext::new(g, n)))).collect();
        for (g, v, m) in sample {
            let engine = &engines.iter().find(|(h, _)| *h == g).unwrap().1;
            cases.push(check(engine, &v, m)?);
        }
    }
    Ok(cases)
}

/// Ordered tuples of nonempty subsets of `[1, ground]`, nondecreasing by mask,
/// with at most `max_sets` entries.
fn subset_tuples(ground: usize, max_sets: usize) -> Vec<SubsetTuple> {
    let full = (1u64 << ground) - 1;
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..max_sets {
        let mut next = Vec::new();
        for t in &frontier {
            let start = t.last().copied().unwrap_or(1);
            for mask in start..=full {
                let mut u = t.clone();
                u.push(mask);
                next.push(u);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.into_iter()
        .map(|masks| SubsetTuple::from_masks(masks.into_iter().map(|m| m << 1).collect()).expect("nonempty sets"))
        .collect()
}

/// Products of small diagonals against their `b1` classification.
fn diagonal(config: &Config) -> Result<Vec<Case>> {
    let ground = config.n.unwrap_or(4);
    let mut cases = Vec::new();
    let figures: [(&[&[usize]], i64); 3] = [
        (&[&[1, 2], &[2, 3]], 0),
        (&[&[1, 2], &[2, 3], &[1, 3]], 1),
        (&[&[1, 2], &[2, 3], &[1, 2, 3]], 2),
    ];
    for (sets, b1) in figures {
        let tuple = SubsetTuple::new(sets)?;
        let inputs = json!({"check": "b1", "tuple": tuple.to_string()});
        cases.push(equality_case(inputs, b1, tuple.betti_b1()?));
    }
    for g in config.genera(&[0, 1, 2]) {
        let ctx = RingContext::new(g, ground);
        for tuple in subset_tuples(ground, 3) {
            if !tuple.is_connected() {
                continue;
            }
            let direct = diagonal_product(&ctx, &tuple)?;
            let classified = diagonal_product_classified(&ctx, &tuple)?;
            let inputs = json!({"check": "product", "genus": g, "tuple": tuple.to_string()});
            cases.push(equality_case(inputs, &classified, &direct));
        }
    }
    Ok(cases)
}

/// Rank equality against the `ρ`-invariant dimension, generator span, and the
/// fixed-point decomposition count.
fn ranks(config: &Config) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    let genera = config.genera(&[0, 1]);
    for n in config.sizes(&[1, 2, 3]) {
        for &g in &genera {
            let engine = XiEngine::new(&RingContext::new(g, n));
            let max_degree = config.max_degree.unwrap_or(8);
            let base = json!({"n": n, "genus": g});
            cases.extend(rank_cases("rank", base, rank_equality_check(&engine, max_degree)?));
        }
    }
    let generator_grid: Vec<(usize, u32, u32)> = match config.n {
        Some(n) => genera.iter().map(|&g| (n, g, config.max_degree.unwrap_or(6))).collect(),
        None => vec![(2, 0, 8), (2, 1, 8), (3, 0, 6)],
    };
    for (n, g, max_degree) in generator_grid {
        let engine = XiEngine::new(&RingContext::new(g, n));
        let base = json!({"n": n, "genus": g});
        cases.extend(rank_cases("generators", base, generator_span_check(&engine, max_degree)?));
    }
    let r_max = config.rank.unwrap_or(3);
    for n in config.sizes(&[2, 3]) {
        for &g in &genera {
            let engine = XiEngine::new(&RingContext::new(g, n));
            for r in 1..=r_max {
                let base = json!({"n": n, "genus": g, "r": r});
                let report = decomposition_dimension_check(&engine, r, config.max_degree.unwrap_or(6))?;
                cases.extend(rank_cases("decomposition", base, report));
            }
        }
    }
    Ok(cases)
}

/// Top term, vanishing and degree bound of restrictions to fixed points.
fn localization(config: &Config) -> Result<Vec<Case>> {
    let max_co = config.max_co.unwrap_or(3);
    let ranks: Vec<u32> = config.rank.map_or_else(|| vec![1, 2, 3], |r| vec![r]);
    let mut cases = Vec::new();
    for n in config.sizes(&[1, 2, 3]) {
        for g in config.genera(&[0, 1]) {
            for &r in &ranks {
                let ctx = RingContext::with(g, n, Rank::Finite(r), vec![])?;
                let engine = XiEngine::new(&ctx);
                let weights = WeightVector::all_below(n, r);
                for v in weights.iter().filter(|v| v.co() <= max_co) {
                    for w in &weights {
                        let inputs = |check: &str| json!({"check": check, "n": n, "genus": g, "r": r, "v": v, "w": w});
                        if v.leq0(w) {
                            cases.push(residual_case(inputs("top_term"), &check_top_term(&engine, v, w)?));
                        }
                        cases.push(flag_case(inputs("top_term_converse"), check_top_term_converse(&engine, v, w)?));
                        cases.push(flag_case(inputs("vanishing"), check_vanishing(&engine, v, w)?));
                    }
                    for sigma in Perm::all(n) {
                        let inputs = json!({"check": "degree_bound", "n": n, "genus": g, "r": r, "v": v, "sigma": sigma.to_string()});
                        cases.push(flag_case(inputs, check_degree_bound(&engine, v, &sigma)?));
                    }
                }
            }
        }
    }
    Ok(cases)
}

/// Poincaré series identities.
fn series(config: &Config) -> Result<Vec<Case>> {
    let genera = config.genera(&[0, 1, 2]);
    let max_t = config.max_degree.unwrap_or(10) as usize;
    let mut cases = Vec::new();
    let ranks: Vec<u32> = config.rank.map_or_else(|| vec![1, 2, 3], |r| vec![r]);
    for &g in &genera {
        for &r in &ranks {
            for (l, residual) in quot_series_check(g, Some(r), 4, max_t).iter().enumerate() {
                let inputs = json!({"check": "quot", "genus": g, "r": r, "l": l, "max_t": max_t});
                cases.push(poly_case(inputs, residual));
            }
        }
        for n in config.sizes(&[1, 2, 3, 4]) {
            for &r in &ranks {
                let inputs = json!({"check": "filt", "genus": g, "r": r, "n": n});
                cases.push(poly_case(inputs, &filt_presentation_check(g, r, n)));
            }
        }
        for m in 1..=4usize {
            let inputs = json!({"check": "sym_projector", "genus": g, "m": m});
            let expected = format!("{:?}", sym_prod_poincare(g, m as u32));
            cases.push(equality_case(inputs, expected, format!("{:?}", sym_prod_by_projector(g, m)?)));
        }
    }
    for g in genera.iter().copied().filter(|&g| g <= 1) {
        let report = infinite_limits_check(g, max_t);
        let inputs = json!({"check": "infinite", "genus": g, "max_t": max_t});
        let expected = format!("{:?}", report.product);
        let got = if report.ok() {
            expected.clone()
        } else {
            serde_json::to_string(&report).expect("plain data")
        };
        cases.push(equality_case(inputs, expected, got));
    }
    Ok(cases)
}

/// Homogeneity, leading term, filtration product law and module recursion on
/// the cross-index grid.
fn structure(config: &Config) -> Result<Vec<Case>> {
    let max_co = config.max_co.unwrap_or(4);
    let mut cases = Vec::new();
    for n in config.sizes(&[2, 3]) {
        for g in config.genera(&[0, 1, 2]) {
            let ctx = RingContext::new(g, n);
            let engine = XiEngine::new(&ctx);
            let grid = recursion_grid(n, max_co);
            for v in &grid {
                let xi = engine.xi(v)?;
                let inputs = |check: &str| json!({"check": check, "n": n, "genus": g, "v": v});
                cases.push(equality_case(
                    inputs("homogeneity"),
                    format!("{:?}", Degree::Homogeneous(2 * v.co())),
                    format!("{:?}", xi.degree()),
                ));
                cases.push(equality_case(inputs("leading_term"), omega_power(&ctx, v), leading_part(&xi, v.co())));
                let (u, l) = split_last(v);
                for a in curve_monomials(&ctx, |_| true) {
                    let residual = engine.check_module_recursion(&u, l, &a)?;
                    let mut i = inputs("module_recursion");
                    i["a"] = json!(a.to_string());
                    cases.push(residual_case(i, &residual));
                }
            }
            let all = WeightVector::all_with_co(n, max_co);
            for v in &grid {
                for w in all.iter().filter(|w| v.co() + w.co() <= max_co) {
                    let inputs = json!({"check": "product_law", "n": n, "genus": g, "v": v, "w": w});
                    cases.push(product_law_case(&engine, v, w, inputs)?);
                }
            }
        }
    }
    Ok(cases)
}

fn omega_power(ctx: &Arc<RingContext>, v: &WeightVector) -> RingElement {
    let e: Vec<u16> = v.entries().iter().map(|&x| x as u16).collect();
    RingElement::one(ctx).times_omega_power(&e)
}

fn leading_part(x: &RingElement, omega_degree: u32) -> RingElement {
    x.filter(|m| m.omega_exp().iter().map(|&e| e as u32).sum::<u32>() == omega_degree)
}

fn split_last(v: &WeightVector) -> (WeightVector, u32) {
    let (last, rest) = v.entries().split_last().expect("nonempty weight");
    (WeightVector(rest.to_vec()), *last)
}

fn product_law_case(engine: &XiEngine, v: &WeightVector, w: &WeightVector, inputs: Value) -> Result<Case> {
    let product = &engine.xi(v)? * &engine.xi(w)?;
    let coeffs = engine.to_xi_basis(&product)?;
    let sum = WeightVector(v.entries().iter().zip(w.entries()).map(|(a, b)| a + b).collect());
    let bound = sum.co();
    let lead = coeffs.get(&sum).cloned().unwrap_or_else(|| RingElement::zero(engine.ctx()));
    let support_ok = coeffs.iter().all(|(u, c)| c.is_zero() || u.co() <= bound);
    let got = if support_ok {
        lead.to_string()
    } else {
        let over: Vec<String> = coeffs.keys().filter(|u| u.co() > bound).map(ToString::to_string).collect();
        format!("support above co {bound}: {}", over.join(" "))
    };
    Ok(equality_case(inputs, RingElement::one(engine.ctx()), got))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(n: usize) -> Config {
        Config {
            n: Some(n),
            genera: Some(vec![0, 1]),
            rank: Some(2),
            max_co: Some(2),
            max_degree: Some(4),
            ..Config::default()
        }
    }

    #[test]
    fn small_suites_pass() {
        for suite in [
            Suite::Pullback,
            Suite::Generating,
            Suite::Diagonal,
            Suite::Ranks,
            Suite::Localization,
            Suite::Series,
            Suite::Structure,
        ] {
            let report = run(suite, &small(2)).unwrap();
            assert!(report.pass(), "{}", report.render_text());
            assert!(report.summary.total > 0);
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn report_is_deterministic() {
        let config = Config {
            genera: Some(vec![0]),
            max_co: Some(2),
            random_cases: 5,
            seed: 7,
            ..Config::default()
        };
        let a = serde_json::to_string(&run(Suite::Recursion, &config).unwrap()).unwrap();
        let b = serde_json::to_string(&run(Suite::Recursion, &config).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn subset_tuples_count() {
        // 3 masks on two points: 3 + 6 + 10 nondecreasing tuples
        assert_eq!(subset_tuples(2, 3).len(), 19);
    }
}
