//! One verdict line per acceptance criterion, at default settings.
//! Exits nonzero when any criterion fails.

use std::process::ExitCode;

use korovkin::config::RunConfig;
use korovkin::criteria::all_criteria;

fn main() -> ExitCode {
    let verdicts = all_criteria(&RunConfig::default());
    for v in &verdicts {
        println!("{}", v.line());
    }
    let failed = verdicts.iter().filter(|v| !v.passed).count();
    println!("acceptance: {} passed, {failed} failed", verdicts.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
