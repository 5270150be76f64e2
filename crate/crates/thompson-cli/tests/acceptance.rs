//! Runs the ten acceptance criteria and prints one PASS or FAIL line for
//! each. The seed can be overridden with `THOMPSON_SEED`.

use std::process::ExitCode;

use thompson_cli::acceptance::{run_all, DEFAULT_SEED};

fn main() -> ExitCode {
    let seed = std::env::var("THOMPSON_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    println!("acceptance suite, seed {seed}");
    let outcomes = run_all(seed);
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    println!("{} passed, {failed} failed", outcomes.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
