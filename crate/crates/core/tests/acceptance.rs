//! Runs every numbered acceptance criterion and prints one line per result.

use std::process::ExitCode;

use yeefdtd::validate::{criterion, CRITERIA};

fn main() -> ExitCode {
    let mut failed = 0;
    for id in CRITERIA {
        match criterion(id) {
            Ok(report) => {
                if !report.passed() {
                    failed += 1;
                }
                println!("{report}");
            }
            Err(e) => {
                failed += 1;
                println!("criterion {id}: FAIL - error: {e}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
