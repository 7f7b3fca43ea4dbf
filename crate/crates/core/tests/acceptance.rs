//! Prints one line per acceptance criterion and fails if any is red.

use std::process::ExitCode;

use k3_frobenius::acceptance::{run_all, DEFAULT_SEED};

fn main() -> ExitCode {
    let seed = match std::env::var("K3FROB_SEED") {
        Ok(s) => match s.parse() {
            Ok(n) => n,
            Err(_) => {
                eprintln!("K3FROB_SEED must be an unsigned integer, got {s:?}");
                return ExitCode::from(2);
            }
        },
        Err(_) => DEFAULT_SEED,
    };
    let report = run_all(seed);
    println!("acceptance suite, seed {:#x}", report.seed);
    for c in &report.criteria {
        println!("{}", c.line());
    }
    let passed = report.criteria.iter().filter(|c| c.passed()).count();
    println!("{passed}/{} criteria passed", report.criteria.len());
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
