//! Acceptance suite with a plain harness so the per-criterion lines are always printed.

use std::process::ExitCode;

use splitfield::acceptance::run_criterion;

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for id in 1..=8 {
        let start = std::time::Instant::now();
        let r = run_criterion(id, 0);
        println!("{r} ({:.1}s)", start.elapsed().as_secs_f64());
        if !r.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
