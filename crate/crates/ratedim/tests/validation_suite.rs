//! The full named-check suite against the baseline scenario: every closed
//! form against its integration-route oracle, every sampler against its
//! CDF, every density against unit normalization.

use ratedim::scenario::parse_scenario_str;
use ratedim::validate::{run_all_checks, NamedCheck};

fn print_outcome(checks: &[NamedCheck]) {
    for c in checks {
        println!(
            "{:<48} value {:>12.3e}  threshold {:>9.3e}  {}",
            c.name,
            c.value,
            c.threshold,
            if c.pass { "ok" } else { "FAIL" }
        );
    }
}

#[test]
fn baseline_scenario_passes_every_check() {
    let cfg = parse_scenario_str("").unwrap();
    let outcome = run_all_checks(&cfg, 20_000);
    print_outcome(&outcome.checks);
    let failures: Vec<_> = outcome.failures().collect();
    assert!(failures.is_empty(), "failing checks: {failures:#?}");
    // every model produced a report
    let names: Vec<&str> = outcome.reports.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(names, ["web", "cs", "vr", "uhd"]);
}

#[test]
fn thresholds_relax_with_smaller_sample_counts() {
    // KS thresholds scale like 1/sqrt(n): at 1e3 samples the suite must
    // still pass with its auto-relaxed thresholds.
    let cfg = parse_scenario_str("").unwrap();
    let outcome = run_all_checks(&cfg, 1000);
    let ks_checks: Vec<_> = outcome
        .checks
        .iter()
        .filter(|c| c.name.contains("(KS)"))
        .collect();
    assert!(!ks_checks.is_empty());
    for c in &ks_checks {
        assert!(
            (c.threshold - 0.1).abs() < 1e-12,
            "threshold at n=1e3 should be 0.1, got {}",
            c.threshold
        );
        assert!(c.pass, "{} failed at n=1e3: {}", c.name, c.value);
    }
}

#[test]
fn alternate_parameters_still_validate() {
    // The oracles are generic in the parameters, not tuned to the baseline.
    let cfg = parse_scenario_str(
        r#"
        [web]
        packet_log_mean = 7.0
        packet_log_sigma = 0.9
        packet_min_bytes = 50.0
        packet_max_bytes = 5e5
        mean_iat_s = 12.0

        [content_sharing]
        packet_bytes = 5e5
        rate_per_s = 4.0
        batch_size = 20

        [uhd]
        packet_min_bits = 1e6
        packet_max_bits = 3e7
        packet_alpha = 2.3
        iat_min_s = 0.5e-3
        iat_max_s = 9e-3
        iat_alpha = 1.2
    "#,
    )
    .unwrap();
    let outcome = run_all_checks(&cfg, 10_000);
    print_outcome(&outcome.checks);
    let failures: Vec<_> = outcome.failures().collect();
    assert!(failures.is_empty(), "failing checks: {failures:#?}");
}
