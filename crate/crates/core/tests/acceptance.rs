//! Acceptance criteria 1-12. Equality checks are exact; the only tolerances
//! are the wall-clock budgets below.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};
use turner_core::verify::{run_suite, SuiteConfig, SuiteReport, SUITES};

const SIGNS_BUDGET: Duration = Duration::from_secs(10);
const PHI_BUDGET: Duration = Duration::from_secs(120);
const GREEN_BUDGET: Duration = Duration::from_secs(300);
/// Per generation instance.
const GENERATION_BUDGET: Duration = Duration::from_secs(300);
const ALL_BUDGET: Duration = Duration::from_secs(15 * 60);

struct Line {
    id: usize,
    name: &'static str,
    pass: bool,
    note: String,
}

fn suite_line(id: usize, name: &'static str, rep: &SuiteReport, budget: Option<Duration>) -> Line {
    let took = Duration::from_millis(rep.millis() as u64);
    let slow = budget.is_some_and(|b| took > b);
    let mut note = format!("{} checks in {:.2?}", rep.checks.len(), took);
    if let Some(b) = budget {
        note += &format!(" (budget {b:?})");
    }
    for c in rep.failures() {
        note += &format!("; {}: {}", c.name, c.detail);
    }
    Line { id, name, pass: rep.passed() && !slow, note }
}

fn main() {
    let start = Instant::now();
    let reports: BTreeMap<String, SuiteReport> = run_suite("all", &SuiteConfig::default())
        .expect("suites run")
        .into_iter()
        .map(|r| (r.suite.clone(), r))
        .collect();
    let total = start.elapsed();
    assert_eq!(reports.len(), SUITES.len(), "one report per suite");
    let get = |s: &str| &reports[s];

    let mut lines = vec![
        suite_line(1, "sign engine coherence", get("signs"), Some(SIGNS_BUDGET)),
        suite_line(2, "phi bijective and multiplicative", get("phi"), Some(PHI_BUDGET)),
        suite_line(3, "double product associativity", get("associativity"), None),
        suite_line(4, "truncated polynomial doubles", get("polynomial"), None),
        suite_line(5, "generalized Green formula", get("green"), Some(GREEN_BUDGET)),
        suite_line(6, "commutant dimension and faithfulness", get("schurweyl"), None),
        suite_line(7, "idempotent truncation", get("truncation"), None),
        suite_line(8, "symmetric unimodular form", get("symmetric"), None),
        suite_line(9, "divided-power integrality", get("integrality"), None),
    ];
    let mut gen = suite_line(10, "generation", get("generation"), None);
    let slow: Vec<&str> = get("generation")
        .checks
        .iter()
        .filter(|c| Duration::from_millis(c.millis as u64) > GENERATION_BUDGET)
        .map(|c| c.name.as_str())
        .collect();
    if !slow.is_empty() {
        gen.pass = false;
        gen.note += &format!("; over {GENERATION_BUDGET:?}: {slow:?}");
    }
    lines.push(gen);
    lines.push(suite_line(11, "desuperization", get("desuper"), None));
    lines.push(Line {
        id: 12,
        name: "verify all",
        pass: total <= ALL_BUDGET && reports.values().all(|r| r.passed()),
        note: format!("{total:.2?} (budget {ALL_BUDGET:?})"),
    });

    for l in &lines {
        println!("criterion {:>2} {}: {} ({})", l.id, if l.pass { "PASS" } else { "FAIL" }, l.name, l.note);
    }
    let failed: Vec<usize> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
