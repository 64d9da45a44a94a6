//! Acceptance criteria 1–9, one line per criterion.

use std::time::Instant;

use carlitz_core::acceptance::{self, Config, CriterionResult};

fn report(r: CriterionResult, started: Instant) {
    println!("{r} ({:.2?})", started.elapsed());
    assert!(r.passed, "criterion {} failed: {}", r.id, r.detail);
}

fn cfg() -> Config {
    Config::default()
}

#[test]
fn criterion_1_fixed_ideal_count() {
    let t = Instant::now();
    report(acceptance::criterion_1(&cfg()), t);
}

#[test]
fn criterion_2_orbit_counts() {
    let t = Instant::now();
    report(acceptance::criterion_2(&cfg()), t);
}

#[test]
fn criterion_3_telescoping() {
    let t = Instant::now();
    report(acceptance::criterion_3(&cfg()), t);
}

#[test]
fn criterion_4_algebra_kernel() {
    let t = Instant::now();
    report(acceptance::criterion_4(&cfg()), t);
}

#[test]
fn criterion_5_oracle_concordance() {
    let t = Instant::now();
    report(acceptance::criterion_5(&cfg()), t);
}

#[test]
fn criterion_6_centre_and_ideals() {
    let t = Instant::now();
    report(acceptance::criterion_6(&cfg()), t);
}

#[test]
fn criterion_7_weight_modules() {
    let t = Instant::now();
    report(acceptance::criterion_7(&cfg()), t);
}

#[test]
fn criterion_8_automorphisms() {
    let t = Instant::now();
    report(acceptance::criterion_8(&cfg()), t);
}

#[test]
fn criterion_9_discrepancy_ledger() {
    let t = Instant::now();
    let records = acceptance::discrepancy_records();
    for d in &records {
        println!("{}", d.to_json());
    }
    report(acceptance::criterion_9(&cfg(), &records), t);
}

#[test]
fn corrupted_run_fails_every_criterion() {
    let bad = Config { corrupt: true, ..Config::default() };
    let records = acceptance::discrepancy_records();
    let results = [
        acceptance::criterion_1(&bad),
        acceptance::criterion_2(&bad),
        acceptance::criterion_3(&bad),
        acceptance::criterion_4(&bad),
        acceptance::criterion_5(&bad),
        acceptance::criterion_6(&bad),
        acceptance::criterion_7(&bad),
        acceptance::criterion_8(&bad),
        acceptance::criterion_9(&bad, &records),
    ];
    for r in &results {
        println!("{r}");
        assert!(!r.passed, "criterion {} passed under corruption", r.id);
    }
}
