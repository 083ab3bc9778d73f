//! The six subcommands.

use crate::output::{fmt, write_density_csv, CsvWriter, RunSummary};
use crate::{CliError, Codec, Traffic};
use ratedim::rate::video;
use ratedim::validate::run_all_checks;
use ratedim::{EmpiricalDistribution, RngStream, ScenarioConfig};
use rayon::prelude::*;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Reference bandwidth figures the bandwidth command reports against.
const REFERENCE_BW_P95_HZ: f64 = 860e6;
const REFERENCE_BW_P99_HZ: f64 = 1.15e9;

fn out_path(requested: Option<&Path>, default_name: &str) -> PathBuf {
    requested
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from(default_name))
}

fn summary_path(csv: &Path) -> PathBuf {
    csv.with_extension("summary.json")
}

/// Independent draws partitioned into fixed-size chunks, one RNG substream
/// per chunk: the sample vector is identical for any worker count.
fn sample_chunked<F>(cfg: &ScenarioConfig, n: u64, draw: F) -> Vec<f64>
where
    F: Fn(&ScenarioConfig, &mut RngStream) -> f64 + Sync,
{
    const CHUNK: u64 = 65_536;
    let chunks = n.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let take = CHUNK.min(n - c * CHUNK);
            let mut rng = RngStream::substream(cfg.seed, c);
            (0..take).map(|_| draw(cfg, &mut rng)).collect::<Vec<f64>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

pub fn cmd_pdf(cfg: &ScenarioConfig, traffic: Traffic, out: Option<&Path>) -> Result<(), CliError> {
    let started = Instant::now();
    let n = cfg.n_runs;
    let samples = sample_chunked(cfg, n, |cfg, rng| match traffic {
        Traffic::Web => cfg.traffic.web.sample_rate(rng),
        Traffic::Cs => cfg.traffic.content_sharing.sample_rate(rng),
        Traffic::Vr => cfg.traffic.vr.sample_rate(rng),
        Traffic::Uhd => cfg.traffic.uhd.sample_rate(rng),
    });
    let dist = EmpiricalDistribution::from_samples(samples).map_err(CliError::from)?;

    let path = out_path(out, &format!("pdf-{}.csv", traffic.name()));
    let mut w = CsvWriter::new();
    w.comment(&format!(
        "ratedim pdf {} scenario={} seed={} samples={}",
        traffic.name(),
        ratedim::scenario::scenario_hash(cfg),
        cfg.seed,
        n
    ));
    if matches!(traffic, Traffic::Web) {
        w.comment(
            "note: analytic_density is the closed-form law of ln(packet)/iat; \
             empirical_density histograms packet/iat draws. The two differ by \
             construction; see README.",
        );
    }
    write_density_csv(&mut w, dist.histogram(), |mid| match traffic {
        Traffic::Web => cfg.traffic.web.rate_pdf(mid).unwrap_or(0.0),
        Traffic::Cs => cfg.traffic.content_sharing.rate_pdf(mid),
        Traffic::Vr => cfg.traffic.vr.rate_pdf(mid),
        Traffic::Uhd => cfg.traffic.uhd.rate_pdf(mid),
    });
    w.comment(&format!("empirical_mean_bps={}", fmt(dist.mean())));
    w.comment(&format!("empirical_max_bps={}", fmt(dist.max())));
    match traffic {
        Traffic::Cs => w.comment(&format!(
            "analytic_mean_bps={}",
            fmt(cfg.traffic.content_sharing.mean_rate())
        )),
        Traffic::Vr => w.comment(&format!(
            "analytic_mean_bps={}",
            fmt(cfg.traffic.vr.mean_rate())
        )),
        Traffic::Web => w.comment("analytic_mean_bps=divergent"),
        Traffic::Uhd => {}
    }
    w.finish(&path)?;

    println!(
        "pdf {}: {} samples, mean {:.6} Mbps, max {:.6} Mbps -> {} ({:.2} s)",
        traffic.name(),
        n,
        dist.mean() / 1e6,
        dist.max() / 1e6,
        path.display(),
        started.elapsed().as_secs_f64()
    );
    Ok(())
}

pub fn cmd_mixture(cfg: &ScenarioConfig, out: Option<&Path>) -> Result<(), CliError> {
    let started = Instant::now();
    let n = cfg.n_runs;
    let samples = sample_chunked(cfg, n, |cfg, rng| cfg.sample_user_rate(rng));
    let dist = EmpiricalDistribution::from_samples(samples).map_err(CliError::from)?;

    let path = out_path(out, "mixture.csv");
    let mut w = CsvWriter::new();
    w.comment(&format!(
        "ratedim mixture scenario={} seed={} samples={}",
        ratedim::scenario::scenario_hash(cfg),
        cfg.seed,
        n
    ));
    write_density_csv(&mut w, dist.histogram(), |mid| {
        cfg.mixture_pdf(mid).unwrap_or(0.0)
    });
    w.comment(&format!("empirical_mean_bps={}", fmt(dist.mean())));
    w.comment(&format!("empirical_max_bps={}", fmt(dist.max())));
    w.finish(&path)?;

    let summary = RunSummary::new(cfg, &dist, n, started.elapsed().as_secs_f64())
        .map_err(CliError::from)?;
    summary.write_json(&summary_path(&path))?;
    summary.print();
    println!("mixture data -> {}", path.display());
    Ok(())
}

pub fn cmd_aggregate(cfg: &ScenarioConfig, out: Option<&Path>) -> Result<(), CliError> {
    let started = Instant::now();
    let dist = cfg.aggregate_simulate().map_err(CliError::from)?;

    let path = out_path(out, "aggregate.csv");
    let mut w = CsvWriter::new();
    w.comment(&format!(
        "ratedim aggregate scenario={} seed={} n_ue={} runs={}",
        ratedim::scenario::scenario_hash(cfg),
        cfg.seed,
        cfg.n_ue,
        cfg.n_runs
    ));
    w.row(&[
        "bin_lo".into(),
        "bin_hi".into(),
        "empirical_density".into(),
        "empirical_cdf".into(),
    ]);
    for b in dist.histogram() {
        w.row(&[fmt(b.lo), fmt(b.hi), fmt(b.density), fmt(dist.ecdf(b.hi))]);
    }
    w.comment(&format!("empirical_mean_bps={}", fmt(dist.mean())));
    w.comment(&format!("empirical_max_bps={}", fmt(dist.max())));
    w.finish(&path)?;

    let summary = RunSummary::new(cfg, &dist, cfg.n_runs, started.elapsed().as_secs_f64())
        .map_err(CliError::from)?;
    summary.write_json(&summary_path(&path))?;
    summary.print();
    println!("aggregate data -> {}", path.display());
    Ok(())
}

pub fn cmd_bandwidth(cfg: &ScenarioConfig, out: Option<&Path>) -> Result<(), CliError> {
    let started = Instant::now();
    let dist = cfg.aggregate_simulate().map_err(CliError::from)?;
    let eff = cfg.spectral_eff;

    let summary = RunSummary::new(cfg, &dist, cfg.n_runs, started.elapsed().as_secs_f64())
        .map_err(CliError::from)?;

    let path = out_path(out, "bandwidth.csv");
    let mut w = CsvWriter::new();
    w.comment(&format!(
        "ratedim bandwidth scenario={} seed={} n_ue={} runs={} spectral_eff={}",
        ratedim::scenario::scenario_hash(cfg),
        cfg.seed,
        cfg.n_ue,
        cfg.n_runs,
        fmt(eff)
    ));
    for note in reference_notes(&summary) {
        w.comment(&note);
    }
    w.row(&[
        "bandwidth_lo_hz".into(),
        "bandwidth_hi_hz".into(),
        "density_per_hz".into(),
        "empirical_cdf".into(),
    ]);
    for b in dist.histogram() {
        // bandwidth = rate / eff, so densities pick up a factor eff
        w.row(&[
            fmt(b.lo / eff),
            fmt(b.hi / eff),
            fmt(b.density * eff),
            fmt(dist.ecdf(b.hi)),
        ]);
    }
    w.comment(&format!(
        "bandwidth_p95_hz={}",
        fmt(summary.bandwidth_p95_hz)
    ));
    w.comment(&format!(
        "bandwidth_p99_hz={}",
        fmt(summary.bandwidth_p99_hz)
    ));
    w.finish(&path)?;

    summary.write_json(&summary_path(&path))?;
    summary.print();
    for note in reference_notes(&summary) {
        println!("{note}");
    }
    println!("bandwidth data -> {}", path.display());
    Ok(())
}

/// Comparison notes against the published reference bandwidths, emitted
/// whenever the computed percentiles depart by more than 5%.
fn reference_notes(summary: &RunSummary) -> Vec<String> {
    let mut notes = Vec::new();
    for (label, value, reference) in [
        ("p95", summary.bandwidth_p95_hz, REFERENCE_BW_P95_HZ),
        ("p99", summary.bandwidth_p99_hz, REFERENCE_BW_P99_HZ),
    ] {
        let delta = value / reference - 1.0;
        if delta.abs() > 0.05 {
            notes.push(format!(
                "note: computed {label} bandwidth {:.1} MHz differs from the {:.1} MHz reference by {:+.1}%",
                value / 1e6,
                reference / 1e6,
                delta * 100.0
            ));
        }
    }
    notes
}

pub fn cmd_uhd_table(codec: Codec, out: Option<&Path>) -> Result<(), CliError> {
    let entries = video::rate_table(codec.factor()).map_err(CliError::from)?;
    let path = out_path(out, &format!("uhd-table-{}.csv", codec.name()));
    let mut w = CsvWriter::new();
    w.comment(&format!(
        "ratedim uhd-table codec={} factor={} peak_rate_line_bps={}",
        codec.name(),
        fmt(codec.factor()),
        fmt(video::PEAK_RATE_BPS)
    ));
    w.row(&[
        "resolution".into(),
        "width".into(),
        "height".into(),
        "bpp".into(),
        "frame_rate".into(),
        "codec_factor".into(),
        "rate_bps".into(),
        "supported".into(),
    ]);
    for e in &entries {
        w.row(&[
            e.resolution.label().into(),
            e.format.width.to_string(),
            e.format.height.to_string(),
            e.format.bpp.to_string(),
            fmt(e.format.frame_rate),
            fmt(e.format.codec_factor),
            fmt(e.rate_bps),
            e.supported.to_string(),
        ]);
    }
    w.finish(&path)?;

    let over = entries.iter().filter(|e| !e.supported).count();
    println!(
        "uhd-table {}: {} formats, {} above the {:.0} Gbps line -> {}",
        codec.name(),
        entries.len(),
        over,
        video::PEAK_RATE_BPS / 1e9,
        path.display()
    );
    Ok(())
}

pub fn cmd_validate(cfg: &ScenarioConfig, runs_override: Option<u64>) -> Result<(), CliError> {
    let n = runs_override.unwrap_or(100_000) as usize;
    let started = Instant::now();
    let outcome = run_all_checks(cfg, n);
    for c in &outcome.checks {
        println!(
            "{:<48} value {:>12.3e}  threshold {:>9.3e}  {}",
            c.name,
            c.value,
            c.threshold,
            if c.pass { "ok" } else { "FAIL" }
        );
    }
    println!("--- goodness of fit ({} samples each) ---", n);
    for (name, r) in &outcome.reports {
        println!(
            "{:<6} ks {:.4e}  max_pdf_gap {:.3e}  normalization_err {:.3e}",
            name, r.ks_distance, r.max_abs_pdf_gap, r.normalization_error
        );
    }
    println!("validate wall time {:.2} s", started.elapsed().as_secs_f64());
    if outcome.all_passed() {
        println!("all checks passed");
        Ok(())
    } else {
        Err(CliError::Validation(
            outcome.failures().map(|c| c.name.clone()).collect(),
        ))
    }
}
