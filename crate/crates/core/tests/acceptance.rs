//! Runs the acceptance criteria and prints one line per criterion.
//!
//! Numeric arguments select criteria (`cargo test --test acceptance -- 4 9`);
//! other arguments, such as the ones libtest would take, are ignored.

use std::process::ExitCode;
use std::time::Duration;

use adc_core::acceptance::{run_criterion, CRITERIA};
use adc_core::enumerate::SearchOptions;

const LIMIT: Duration = Duration::from_secs(60);

fn main() -> ExitCode {
    assert_eq!(CRITERIA.len(), 11);
    let mut ids: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .filter(|id| (1..=CRITERIA.len()).contains(id))
        .collect();
    if ids.is_empty() {
        ids = (1..=CRITERIA.len()).collect();
    }
    let mut failed = Vec::new();
    for id in ids {
        let out = run_criterion(id, SearchOptions::default());
        println!("{}", out.line());
        if !out.passed {
            eprintln!("criterion {id} details:\n{:#}", out.details);
            failed.push(id);
        } else if out.elapsed_ms >= LIMIT.as_millis() {
            eprintln!(
                "criterion {id} took {} ms, over the {} s limit",
                out.elapsed_ms,
                LIMIT.as_secs()
            );
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed {failed:?}");
        ExitCode::FAILURE
    }
}
