//! The acceptance criteria, run in order. Prints one PASS/FAIL line per
//! criterion (plus the JSON detail of any failure) and exits nonzero if any
//! criterion fails. `cargo test --test acceptance -- 3 7` runs a subset.

use std::process::ExitCode;

use ffmoduli::acceptance::{run_criterion, SuiteOptions};

fn main() -> ExitCode {
    let only: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ids: Vec<u8> = if only.is_empty() { (1..=11).collect() } else { only };
    let opts = SuiteOptions::default();
    let mut failed = Vec::new();
    for id in ids {
        let outcome = run_criterion(id, &opts);
        println!("{}", outcome.line());
        if !outcome.pass {
            println!("{}", serde_json::to_string_pretty(&outcome.detail).unwrap());
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
