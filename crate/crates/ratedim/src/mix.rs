//! Engaging-rate mixture, multi-user aggregation and bandwidth conversion.
//!
//! A user draws its traffic type from the engaging rates, then a rate from
//! that type's model. A cell aggregates `n_ue` independent users per
//! simulation run. Runs map one-to-one onto RNG substreams (run `i` owns
//! stream `i`), so the aggregate distribution is bit-identical for a fixed
//! `(seed, n_runs, n_ue)` no matter how many workers execute it.

use crate::error::{Error, Result};
use crate::pdf::AnalyticPdf;
use crate::rate::{BatchTraffic, UhdVideo, WebBrowsing};
use crate::rng::RngStream;
use rayon::prelude::*;

/// Probability of a user engaging in each traffic type; must sum to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngagingRates {
    web: f64,
    content_sharing: f64,
    vr: f64,
    uhd: f64,
}

impl EngagingRates {
    pub fn new(web: f64, content_sharing: f64, vr: f64, uhd: f64) -> Result<Self> {
        for (name, p) in [
            ("web", web),
            ("content_sharing", content_sharing),
            ("vr", vr),
            ("uhd", uhd),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Config(format!(
                    "engaging rate {name} must be in [0, 1], got {p}"
                )));
            }
        }
        let sum = web + content_sharing + vr + uhd;
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::Config(format!(
                "engaging rates must sum to 1, got {sum}"
            )));
        }
        Ok(EngagingRates {
            web,
            content_sharing,
            vr,
            uhd,
        })
    }

    pub fn web(&self) -> f64 {
        self.web
    }
    pub fn content_sharing(&self) -> f64 {
        self.content_sharing
    }
    pub fn vr(&self) -> f64 {
        self.vr
    }
    pub fn uhd(&self) -> f64 {
        self.uhd
    }
}

/// The four per-type rate models of one scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrafficModels {
    pub web: WebBrowsing,
    pub content_sharing: BatchTraffic,
    pub vr: BatchTraffic,
    pub uhd: UhdVideo,
}

/// Everything one simulation needs: models, weights, cell size, run count,
/// seed and the area spectral efficiency used for bandwidth conversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioConfig {
    pub rates: EngagingRates,
    pub traffic: TrafficModels,
    pub n_ue: u32,
    pub n_runs: u64,
    pub seed: u64,
    pub spectral_eff: f64,
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_ue < 1 {
            return Err(Error::Config("n_ue must be >= 1".to_string()));
        }
        if self.n_runs < 1 {
            return Err(Error::Config("n_runs must be >= 1".to_string()));
        }
        if !(self.spectral_eff > 0.0) {
            return Err(Error::Config(format!(
                "spectral efficiency must be positive, got {}",
                self.spectral_eff
            )));
        }
        Ok(())
    }

    /// Engaging-rate-weighted sum of the four analytic rate densities.
    pub fn mixture_pdf(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::param(format!("rate must be positive, got {r}")));
        }
        let p = &self.rates;
        let mut acc = 0.0;
        if p.web > 0.0 {
            acc += p.web * self.traffic.web.rate_pdf(r)?;
        }
        acc += p.content_sharing * self.traffic.content_sharing.rate_pdf(r);
        acc += p.vr * self.traffic.vr.rate_pdf(r);
        acc += p.uhd * self.traffic.uhd.rate_pdf(r);
        Ok(acc)
    }

    /// The mixture as an [`AnalyticPdf`], with every component's structure
    /// exposed as quadrature hints.
    pub fn mixture_analytic_pdf(&self) -> AnalyticPdf {
        let cfg = *self;
        let mut hints = Vec::new();
        hints.extend_from_slice(cfg.traffic.web.analytic_pdf().hints());
        hints.extend_from_slice(cfg.traffic.content_sharing.analytic_pdf().hints());
        hints.extend_from_slice(cfg.traffic.vr.analytic_pdf().hints());
        let (uhd_lo, uhd_hi) = cfg.traffic.uhd.support();
        hints.extend_from_slice(cfg.traffic.uhd.analytic_pdf().hints());
        hints.push(uhd_lo);
        hints.push(uhd_hi);
        AnalyticPdf::new(0.0, f64::INFINITY, move |r| {
            cfg.mixture_pdf(r).unwrap_or(0.0)
        })
        .with_hints(hints)
    }

    /// Draws a traffic type from the engaging rates, then one rate from it.
    pub fn sample_user_rate(&self, rng: &mut RngStream) -> f64 {
        let u = rng.uniform();
        let p = &self.rates;
        if u < p.web {
            self.traffic.web.sample_rate(rng)
        } else if u < p.web + p.content_sharing {
            self.traffic.content_sharing.sample_rate(rng)
        } else if u < p.web + p.content_sharing + p.vr {
            self.traffic.vr.sample_rate(rng)
        } else {
            self.traffic.uhd.sample_rate(rng)
        }
    }

    /// Sum of `n_ue` independent user rates; one full simulation run.
    pub fn sample_cell_rate(&self, rng: &mut RngStream) -> f64 {
        (0..self.n_ue).map(|_| self.sample_user_rate(rng)).sum()
    }

    /// Monte Carlo aggregate over `n_runs` runs of `n_ue` users.
    ///
    /// Run `i` draws from substream `i`; runs are distributed over the
    /// current rayon pool and collected in run order, so the result is
    /// identical regardless of worker count.
    pub fn aggregate_simulate(&self) -> Result<EmpiricalDistribution> {
        self.validate()?;
        if u128::from(self.n_runs) * u128::from(self.n_ue) > u128::from(u64::MAX) {
            return Err(Error::Config(format!(
                "n_runs ({}) x n_ue ({}) exceeds the stream index space",
                self.n_runs, self.n_ue
            )));
        }
        let samples: Vec<f64> = (0..self.n_runs)
            .into_par_iter()
            .map(|run| {
                let mut rng = RngStream::substream(self.seed, run);
                self.sample_cell_rate(&mut rng)
            })
            .collect();
        EmpiricalDistribution::from_samples(samples)
    }
}

/// Bandwidth needed to carry `rate` at the given area spectral efficiency.
pub fn bandwidth_required(rate_bps: f64, spectral_eff: f64) -> Result<f64> {
    if !(spectral_eff > 0.0) {
        return Err(Error::Config(format!(
            "spectral efficiency must be positive, got {spectral_eff}"
        )));
    }
    Ok(rate_bps / spectral_eff)
}

/// One histogram bin with its probability density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub density: f64,
}

/// Sorted Monte Carlo output: histogram, quantile access, basic moments.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    sorted: Vec<f64>,
    bins: Vec<HistogramBin>,
    mean: f64,
    max: f64,
}

/// Log-spaced bins; the sampled rates span several decades, so linear bins
/// would collapse the low-rate structure into one bin.
const HISTOGRAM_BINS: usize = 1000;

impl EmpiricalDistribution {
    pub fn from_samples(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySamples);
        }
        if samples.iter().any(|x| !(*x > 0.0) || !x.is_finite()) {
            return Err(Error::Config(
                "empirical samples must be positive and finite".to_string(),
            ));
        }
        // Sequential mean over the pre-sort order: deterministic for a
        // fixed seed regardless of worker count.
        let mean = samples.iter().sum::<f64>() / samples.len() as f64;
        samples.sort_by(f64::total_cmp);
        let min = samples[0];
        let max = *samples.last().unwrap();
        let bins = Self::log_histogram(&samples, min, max);
        Ok(EmpiricalDistribution {
            sorted: samples,
            bins,
            mean,
            max,
        })
    }

    fn log_histogram(sorted: &[f64], min: f64, max: f64) -> Vec<HistogramBin> {
        let n = sorted.len() as f64;
        if min == max {
            // degenerate sample set: one token bin around the point mass
            let lo = min * (1.0 - 1e-12);
            let hi = max * (1.0 + 1e-12);
            return vec![HistogramBin {
                lo,
                hi,
                density: 1.0 / (hi - lo),
            }];
        }
        let bins = HISTOGRAM_BINS.min(sorted.len());
        let ln_min = min.ln();
        let step = (max.ln() - ln_min) / bins as f64;
        let edge = |i: usize| -> f64 {
            if i == 0 {
                min
            } else if i == bins {
                max
            } else {
                (ln_min + step * i as f64).exp()
            }
        };
        let mut out = Vec::with_capacity(bins);
        let mut start = 0usize;
        for i in 0..bins {
            let lo = edge(i);
            let hi = edge(i + 1);
            // count samples in [lo, hi); the final bin is closed
            let end = if i + 1 == bins {
                sorted.len()
            } else {
                start + sorted[start..].partition_point(|&x| x < hi)
            };
            let count = end - start;
            start = end;
            out.push(HistogramBin {
                lo,
                hi,
                density: count as f64 / (n * (hi - lo)),
            });
        }
        out
    }

    pub fn count(&self) -> usize {
        self.sorted.len()
    }
    pub fn mean(&self) -> f64 {
        self.mean
    }
    pub fn max(&self) -> f64 {
        self.max
    }
    pub fn min(&self) -> f64 {
        self.sorted[0]
    }
    pub fn histogram(&self) -> &[HistogramBin] {
        &self.bins
    }
    pub fn samples(&self) -> &[f64] {
        &self.sorted
    }

    /// Order-statistic quantile with linear interpolation, `0 < level < 1`.
    pub fn percentile(&self, level: f64) -> Result<f64> {
        if !(level > 0.0 && level < 1.0) {
            return Err(Error::param(format!(
                "percentile level must be in (0, 1), got {level}"
            )));
        }
        let n = self.sorted.len();
        if n == 1 {
            return Ok(self.sorted[0]);
        }
        let pos = level * (n - 1) as f64;
        let idx = pos.floor() as usize;
        let frac = pos - idx as f64;
        if idx + 1 == n {
            return Ok(self.sorted[n - 1]);
        }
        Ok(self.sorted[idx] + frac * (self.sorted[idx + 1] - self.sorted[idx]))
    }

    /// Fraction of samples at or below `x`.
    pub fn ecdf(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&s| s <= x) as f64 / self.sorted.len() as f64
    }

    /// Mode of the histogram density: geometric midpoint of the peak bin.
    pub fn histogram_mode(&self) -> f64 {
        let peak = self
            .bins
            .iter()
            .max_by(|a, b| a.density.total_cmp(&b.density))
            .unwrap();
        (peak.lo * peak.hi).sqrt()
    }
}
