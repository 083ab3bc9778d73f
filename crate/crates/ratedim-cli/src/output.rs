//! File and console output: CSV tables, JSON run summaries.
//!
//! Everything written to disk is a pure function of the scenario and seed:
//! wall-clock time is reported on stdout only, keeping result files
//! byte-identical across repeated runs and worker counts.

use ratedim::mix::HistogramBin;
use ratedim::{bandwidth_required, EmpiricalDistribution, ScenarioConfig};
use serde::Serialize;
use std::io::Write;
use std::path::Path;

/// Digest of one Monte Carlo experiment.
#[derive(Debug, Serialize)]
pub struct RunSummary {
    pub scenario_hash: String,
    pub seed: u64,
    pub n_runs: u64,
    pub mean_bps: f64,
    pub max_bps: f64,
    pub p50_bps: f64,
    pub p95_bps: f64,
    pub p99_bps: f64,
    pub bandwidth_p95_hz: f64,
    pub bandwidth_p99_hz: f64,
    /// Measured, not reproducible; excluded from the serialized summary.
    #[serde(skip_serializing)]
    pub wall_time_s: f64,
}

impl RunSummary {
    pub fn new(
        cfg: &ScenarioConfig,
        dist: &EmpiricalDistribution,
        n_runs: u64,
        wall_time_s: f64,
    ) -> ratedim::Result<Self> {
        let p95 = dist.percentile(0.95)?;
        let p99 = dist.percentile(0.99)?;
        Ok(RunSummary {
            scenario_hash: ratedim::scenario::scenario_hash(cfg),
            seed: cfg.seed,
            n_runs,
            mean_bps: dist.mean(),
            max_bps: dist.max(),
            p50_bps: dist.percentile(0.5)?,
            p95_bps: p95,
            p99_bps: p99,
            bandwidth_p95_hz: bandwidth_required(p95, cfg.spectral_eff)?,
            bandwidth_p99_hz: bandwidth_required(p99, cfg.spectral_eff)?,
            wall_time_s,
        })
    }

    pub fn write_json(&self, path: &Path) -> std::io::Result<()> {
        let mut body = serde_json::to_string_pretty(self).expect("summary serializes");
        body.push('\n');
        std::fs::write(path, body)
    }

    pub fn print(&self) {
        println!(
            "scenario {} seed {} runs {}",
            self.scenario_hash, self.seed, self.n_runs
        );
        println!(
            "  mean {:.4} Gbps  max {:.4} Gbps  p50 {:.4} Gbps  p95 {:.4} Gbps  p99 {:.4} Gbps",
            self.mean_bps / 1e9,
            self.max_bps / 1e9,
            self.p50_bps / 1e9,
            self.p95_bps / 1e9,
            self.p99_bps / 1e9
        );
        println!(
            "  bandwidth p95 {:.4} MHz  p99 {:.4} MHz",
            self.bandwidth_p95_hz / 1e6,
            self.bandwidth_p99_hz / 1e6
        );
        println!("  wall time {:.2} s", self.wall_time_s);
    }
}

pub struct CsvWriter {
    buf: Vec<u8>,
}

impl CsvWriter {
    pub fn new() -> Self {
        CsvWriter { buf: Vec::new() }
    }

    pub fn comment(&mut self, text: &str) {
        writeln!(self.buf, "# {text}").unwrap();
    }

    pub fn row(&mut self, fields: &[String]) {
        writeln!(self.buf, "{}", fields.join(",")).unwrap();
    }

    pub fn finish(self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.buf)
    }
}

pub fn fmt(x: f64) -> String {
    format!("{x}")
}

/// Histogram rows with an analytic column evaluated at each bin's
/// geometric midpoint.
pub fn write_density_csv(
    w: &mut CsvWriter,
    bins: &[HistogramBin],
    analytic: impl Fn(f64) -> f64,
) {
    w.row(&[
        "bin_lo".into(),
        "bin_hi".into(),
        "analytic_density".into(),
        "empirical_density".into(),
    ]);
    for b in bins {
        let mid = (b.lo * b.hi).sqrt();
        w.row(&[fmt(b.lo), fmt(b.hi), fmt(analytic(mid)), fmt(b.density)]);
    }
}
