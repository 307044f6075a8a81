//! Acceptance suite: runs every criterion and prints one PASS/FAIL line
//! each, followed by the evidence collected for it.
//!
//! Runs without the libtest harness so the table is always printed. Numeric
//! arguments select criteria, e.g. `cargo test --test acceptance -- 2 8`.
//! `REPRO_TIME_LIMIT` (seconds) overrides the solver budget.

use std::process::ExitCode;

use mincayley::repro::{budget_from_env, run_criterion, CRITERIA};

fn main() -> ExitCode {
    let selected: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .filter(|id| (1..=CRITERIA).contains(id))
        .collect();
    let ids: Vec<usize> = if selected.is_empty() { (1..=CRITERIA).collect() } else { selected };

    let budget = budget_from_env();
    let mut failed = Vec::new();
    for &id in &ids {
        let outcome = run_criterion(id, budget);
        println!("{}", outcome.line());
        for d in &outcome.details {
            println!("      {d}");
        }
        if !outcome.passed {
            failed.push(id);
        }
    }
    println!("acceptance: {}/{} criteria passed", ids.len() - failed.len(), ids.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
