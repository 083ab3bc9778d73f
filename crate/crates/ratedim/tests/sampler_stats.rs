//! Distributional statistics of the per-traffic samplers on the baseline
//! parameters.

use ratedim::scenario::parse_scenario_str;
use ratedim::RngStream;

#[test]
fn web_rates_sit_below_fifty_kilobit() {
    // the sampled web rate's 90th percentile stays under 0.05 Mbps
    let cfg = parse_scenario_str("").unwrap();
    let mut rng = RngStream::new(70);
    let n = 100_000;
    let mut rates: Vec<f64> = (0..n)
        .map(|_| cfg.traffic.web.sample_rate(&mut rng))
        .collect();
    rates.sort_by(f64::total_cmp);
    let p90 = rates[(0.9 * n as f64) as usize];
    assert!(p90 < 0.05e6, "web p90 = {p90} bits/s");
}

#[test]
fn content_sharing_empirical_stats() {
    let cfg = parse_scenario_str("").unwrap();
    let cs = &cfg.traffic.content_sharing;
    let mut rng = RngStream::new(71);
    let n = 100_000;
    let mut sum = 0.0;
    let mut max: f64 = 0.0;
    for _ in 0..n {
        let r = cs.sample_rate(&mut rng);
        sum += r;
        max = max.max(r);
    }
    let mean = sum / n as f64;
    assert!((mean / cs.mean_rate() - 1.0).abs() < 0.01, "mean {mean}");
    assert!(max > 200e6, "max {max}");
}

#[test]
fn vr_empirical_mean_matches_closed_form() {
    let cfg = parse_scenario_str("").unwrap();
    let vr = &cfg.traffic.vr;
    let mut rng = RngStream::new(72);
    let n = 200_000;
    let mean = (0..n).map(|_| vr.sample_rate(&mut rng)).sum::<f64>() / n as f64;
    assert!(
        (mean / vr.mean_rate() - 1.0).abs() < 0.01,
        "vr mean {mean} vs {}",
        vr.mean_rate()
    );
}

#[test]
fn uhd_empirical_mean_matches_moment_product() {
    // E[rate] = E[packet] · E[1/iat]; the second factor by quadrature of
    // the closed-form density would be circular here, so use the exact
    // closed form of E[1/T] for a truncated Pareto instead.
    let cfg = parse_scenario_str("").unwrap();
    let uhd = &cfg.traffic.uhd;
    let (alpha, lo, hi) = (
        uhd.iat().alpha(),
        uhd.iat().min_value(),
        uhd.iat().max_value(),
    );
    let q = (lo / hi).powf(alpha);
    let inv_iat_mean = alpha / ((alpha + 1.0) * (1.0 - q)) * (1.0 / lo - q / hi);
    let expected = uhd.packet().mean() * inv_iat_mean;

    let mut rng = RngStream::new(73);
    let n = 200_000;
    let mean = (0..n).map(|_| uhd.sample_rate(&mut rng)).sum::<f64>() / n as f64;
    assert!(
        (mean / expected - 1.0).abs() < 0.01,
        "uhd mean {mean} vs {expected}"
    );
    // frozen reference for the baseline parameters
    assert!((expected / 4.805_634_585e9 - 1.0).abs() < 1e-6);
}

#[test]
fn minimal_batch_mean_is_two_s_lambda() {
    let cfg = parse_scenario_str("[content_sharing]\nbatch_size = 2\n").unwrap();
    let cs = &cfg.traffic.content_sharing;
    let mut rng = RngStream::new(74);
    let n = 1_000_000;
    let mean = (0..n).map(|_| cs.sample_rate(&mut rng)).sum::<f64>() / n as f64;
    let expected = 2.0 * cs.packet_bits() * cs.rate_lambda();
    assert!(
        (mean / expected - 1.0).abs() < 0.02,
        "mean {mean} vs {expected}"
    );
}
