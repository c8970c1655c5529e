//! One line per acceptance criterion. Every criterion must pass.

use chier_cli::{run_suite, Outcome, SuiteConfig, CRITERIA};

#[test]
fn acceptance() {
    let reports = run_suite(&SuiteConfig::default());
    assert_eq!(reports.len(), CRITERIA.len());
    println!();
    for r in &reports {
        println!("{}", r.line());
    }
    let failed: Vec<_> = reports.iter().filter(|r| r.outcome != Outcome::Pass).map(|r| r.id).collect();
    assert!(failed.is_empty(), "criteria not passing: {failed:?}");
}
