//! Runs every acceptance criterion at full size and prints one line each.
//!
//! Individual criteria are independent; the test fails if any of them does,
//! after all have been reported.

use lintrans::selftest::run_all;

#[test]
fn all_criteria() {
    let outcomes = run_all(|o| println!("{o}"));
    assert_eq!(outcomes.len(), 9);
    let failed: Vec<String> = outcomes.iter().filter(|o| !o.passed).map(|o| format!("criterion {}: {}", o.number, o.detail)).collect();
    assert!(failed.is_empty(), "failing criteria:\n{}", failed.join("\n"));
}
