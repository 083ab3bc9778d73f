//! Statistical traffic models and bandwidth dimensioning for mm-wave
//! small cells.
//!
//! The crate models the instantaneous data rate demanded by four traffic
//! types — web browsing, content sharing, virtual reality and UHD video —
//! as closed-form probability laws with matching Monte Carlo samplers. It
//! combines them into a per-user engaging-rate mixture, aggregates many
//! simultaneous users per cell, and converts rate percentiles into the
//! spectrum bandwidth needed to serve them.
//!
//! Module map:
//!
//! * [`dist`] — base laws (truncated lognormal, exponential, Erlang,
//!   truncated Pareto) with densities, CDFs, closed-form means and
//!   inverse-CDF samplers.
//! * [`rate`] — per-traffic-type rate models plus the UHD average-rate
//!   calculator and planning table.
//! * [`mix`] — engaging-rate mixture, multi-user Monte Carlo aggregation,
//!   empirical statistics and the rate→bandwidth conversion.
//! * [`validate`] — independent numerical oracles: adaptive quadrature,
//!   ratio-distribution integration, numeric convolution,
//!   Kolmogorov–Smirnov statistics and the named check suite.
//! * [`scenario`] — TOML scenario files with built-in defaults and a
//!   stable configuration digest.
//! * [`rng`] — substream-addressable deterministic RNG.
//!
//! Determinism contract: any simulation driven by a fixed
//! `(seed, n_runs, n_ue)` produces identical output regardless of how many
//! worker threads execute it.

pub mod dist;
pub mod error;
pub mod mix;
pub mod pdf;
pub mod rate;
pub mod rng;
pub mod scenario;
pub mod validate;

pub use error::{Error, Result};
pub use mix::{bandwidth_required, EmpiricalDistribution, EngagingRates, ScenarioConfig};
pub use pdf::AnalyticPdf;
pub use rng::RngStream;
