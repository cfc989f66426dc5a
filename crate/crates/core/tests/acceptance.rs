//! Acceptance suite: every desk check must pass within its time budget.
//! Prints one line per criterion and exits nonzero if any line fails.

use std::process::ExitCode;

use dlfq::checks::{desk_checks, CheckConfig};

fn main() -> ExitCode {
    let config = CheckConfig::default();
    let checks = desk_checks();
    let mut failed = 0;
    println!("\nacceptance: {} criteria, seed {}", checks.len(), config.seed);
    for (i, check) in checks.iter().enumerate() {
        let report = check.run(&config);
        let in_time = report.elapsed <= check.time_limit;
        let ok = report.pass && in_time;
        if !ok {
            failed += 1;
        }
        println!(
            "{} [{:>2}] {:<20} {:>9.3}s / {:>4}s  {}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            check.id,
            report.elapsed.as_secs_f64(),
            check.time_limit.as_secs(),
            if report.pass { "" } else { "(check failed)" },
        );
        if !report.pass {
            if let Some(w) = &report.witness {
                println!("       witness: {w}");
            }
        } else if !in_time {
            println!("       over the time budget");
        }
    }
    println!("acceptance: {} passed, {} failed\n", checks.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
