//! Acceptance criteria AC1-AC8 at their stated genus ranges and tolerances.
//! Each test prints one PASS/FAIL line and fails if the criterion fails.
//!
//! Run with `cargo test -p kappa-core --test acceptance -- --nocapture`.

use std::sync::OnceLock;

use kappa_core::conventions::{resolve, Choice, Conventions};
use kappa_core::verify::{run_criterion, CheckResult, Criterion, VerifyConfig};

fn conventions() -> &'static Conventions {
    static CONV: OnceLock<Conventions> = OnceLock::new();
    CONV.get_or_init(|| resolve(Choice::Auto, Choice::Auto).expect("calibration runs"))
}

fn run(criterion: Criterion) {
    let cfg = VerifyConfig::new(conventions().clone());
    let genera = criterion.acceptance_genera();
    let checks = run_criterion(&cfg, criterion, &genera);
    let hard: Vec<&CheckResult> = checks.iter().filter(|c| c.hard).collect();
    let failed: Vec<&CheckResult> = hard.iter().copied().filter(|c| !c.passed).collect();
    let passed = !hard.is_empty() && failed.is_empty();
    let (lo, hi) = (genera.first().unwrap(), genera.last().unwrap());
    println!(
        "{} {} {} (g in [{lo}, {hi}], {} genera, {} checks, {} failed)",
        criterion,
        if passed { "PASS" } else { "FAIL" },
        criterion.title(),
        genera.len(),
        hard.len(),
        failed.len()
    );
    for c in checks.iter().filter(|c| !c.passed).take(6) {
        println!("    {c}");
    }
    for c in checks.iter().filter(|c| !c.hard && c.passed).take(2) {
        println!("    {c}");
    }
    assert!(passed, "{criterion} failed: {} of {} checks", failed.len(), hard.len());
}

#[test]
fn ac1_char_poly_identity() {
    run(Criterion::CharPoly);
}

#[test]
fn ac2_dilatation_sandwich() {
    run(Criterion::DilatationSandwich);
}

#[test]
fn ac3_dominant_root() {
    run(Criterion::DominantRoot);
}

#[test]
fn ac4_self_loop_census() {
    run(Criterion::SelfLoop);
}

#[test]
fn ac5_mixing_exponent() {
    run(Criterion::Mixing);
}

#[test]
fn ac6_row_sum_bound() {
    run(Criterion::RowSum);
}

#[test]
fn ac7_kappa_asymptotics() {
    run(Criterion::KappaAsymptotics);
}

#[test]
fn ac8_property_suites() {
    run(Criterion::Properties);
}
