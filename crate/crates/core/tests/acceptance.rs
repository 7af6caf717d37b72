//! One line per acceptance criterion. Criteria listed in `EXPECTED_FAILURES`
//! cannot be met as worded; they still print `[FAIL]`, and the target fails
//! if any other criterion fails or if a listed one starts passing.

use std::process::ExitCode;

use surgeon::cli::verify;

/// The asset gate as worded contradicts criteria 2 and 3.
const EXPECTED_FAILURES: [u8; 1] = [10];

fn main() -> ExitCode {
    let results = verify::run_all();
    let mut unexpected = Vec::new();
    for r in &results {
        let expected = EXPECTED_FAILURES.contains(&r.id);
        let note = match (r.pass, expected) {
            (false, true) => " [expected]",
            (true, true) => " [unexpected pass]",
            _ => "",
        };
        println!("{r}{note}");
        if r.pass == expected {
            unexpected.push(r.id);
        }
    }
    let passed = results.iter().filter(|r| r.pass).count();
    println!("{passed} of {} criteria passed", results.len());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
