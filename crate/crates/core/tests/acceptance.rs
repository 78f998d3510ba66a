//! One line per acceptance criterion, each held to its wall-time limit.

use cobordism_schubert::selftest::{run_all, Config, Status};

#[test]
fn acceptance_criteria() {
    let cfg = Config::default();
    let reports = run_all(&cfg);
    for r in &reports {
        println!("{r}");
    }
    assert_eq!(reports.len(), 11);
    let failed: Vec<_> = reports
        .iter()
        .filter(|r| r.status != Status::Pass || !r.within_limit())
        .collect();
    assert!(
        failed.is_empty(),
        "failing criteria: {:?}",
        failed.iter().map(|r| r.id).collect::<Vec<_>>()
    );
}
