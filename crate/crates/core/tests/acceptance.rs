//! One line per acceptance criterion; the test fails if any criterion does.

use hermite_renyi::validation::{determinism, report, run_all};

#[test]
fn acceptance_suite() {
    let results = run_all();
    let text = report(&results);
    let repeat = determinism(&text);
    for r in results.iter().chain(std::iter::once(&repeat)) {
        println!("{}", r.line());
    }
    let failed: Vec<u32> = results
        .iter()
        .chain(std::iter::once(&repeat))
        .filter(|r| !r.passed)
        .map(|r| r.id)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
