//! TOML scenario files.
//!
//! Every key is optional and falls back to the built-in baseline hotspot
//! scenario; unknown keys are rejected. The fully-resolved configuration
//! hashes to a stable scenario id that stamps result files.

use crate::dist::{Exponential, TruncLognormal, TruncPareto};
use crate::error::{Error, Result};
use crate::mix::{EngagingRates, ScenarioConfig, TrafficModels};
use crate::rate::{BatchTraffic, UhdVideo, WebBrowsing};
use serde::Deserialize;
use sha2::{Digest, Sha256};
use std::path::Path;

/// Baseline scenario constants: the dense-hotspot parameter set used
/// throughout the docs and the validation targets.
pub mod defaults {
    pub const SEED: u64 = 42;
    pub const N_UE: u32 = 40;
    pub const N_RUNS: u64 = 1_000_000;
    /// 7.3 bits/s/Hz enhanced fourfold by beamforming and densification.
    pub const SPECTRAL_EFF: f64 = 29.2;

    pub const P_WEB: f64 = 0.51;
    pub const P_CS: f64 = 0.45;
    pub const P_VR: f64 = 0.02;
    pub const P_UHD: f64 = 0.02;

    pub const WEB_LOG_MEAN: f64 = 8.35; // ln-bytes
    pub const WEB_LOG_SIGMA: f64 = 1.37;
    pub const WEB_PACKET_MIN_BYTES: f64 = 100.0;
    pub const WEB_PACKET_MAX_BYTES: f64 = 2e6;
    pub const WEB_MEAN_IAT_S: f64 = 30.0;

    pub const CS_PACKET_BYTES: f64 = 2e6;
    pub const CS_RATE_PER_S: f64 = 8.33;
    /// Batch size is a free knob; 50 reproduces the documented mean rates.
    pub const CS_BATCH: u32 = 50;

    pub const VR_PACKET_BYTES: f64 = 20e6;
    pub const VR_RATE_PER_S: f64 = 50.0;
    pub const VR_BATCH: u32 = 50;

    pub const UHD_PACKET_MIN_BITS: f64 = 3.32e6;
    pub const UHD_PACKET_MAX_BITS: f64 = 20.75e6;
    pub const UHD_PACKET_ALPHA: f64 = 1.67;
    pub const UHD_IAT_MIN_S: f64 = 0.832e-3;
    pub const UHD_IAT_MAX_S: f64 = 5.2e-3;
    pub const UHD_IAT_ALPHA: f64 = 1.67;

    /// Bytes are decimal: 1 Mbyte = 1e6 bytes = 8e6 bits.
    pub const BITS_PER_BYTE: f64 = 8.0;
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioFile {
    pub seed: u64,
    pub n_ue: u32,
    pub n_runs: u64,
    pub spectral_eff: f64,
    pub engaging: EngagingSection,
    pub web: WebSection,
    pub content_sharing: ContentSharingSection,
    pub vr: VrSection,
    pub uhd: UhdSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EngagingSection {
    pub web: f64,
    pub content_sharing: f64,
    pub vr: f64,
    pub uhd: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WebSection {
    /// Location of ln(packet bytes).
    pub packet_log_mean: f64,
    /// Scale of ln(packet bytes).
    pub packet_log_sigma: f64,
    pub packet_min_bytes: f64,
    pub packet_max_bytes: f64,
    pub mean_iat_s: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ContentSharingSection {
    pub packet_bytes: f64,
    pub rate_per_s: f64,
    pub batch_size: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VrSection {
    pub packet_bytes: f64,
    pub rate_per_s: f64,
    pub batch_size: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct UhdSection {
    pub packet_min_bits: f64,
    pub packet_max_bits: f64,
    pub packet_alpha: f64,
    pub iat_min_s: f64,
    pub iat_max_s: f64,
    pub iat_alpha: f64,
}

impl Default for ScenarioFile {
    fn default() -> Self {
        ScenarioFile {
            seed: defaults::SEED,
            n_ue: defaults::N_UE,
            n_runs: defaults::N_RUNS,
            spectral_eff: defaults::SPECTRAL_EFF,
            engaging: EngagingSection::default(),
            web: WebSection::default(),
            content_sharing: ContentSharingSection::default(),
            vr: VrSection::default(),
            uhd: UhdSection::default(),
        }
    }
}

impl Default for EngagingSection {
    fn default() -> Self {
        EngagingSection {
            web: defaults::P_WEB,
            content_sharing: defaults::P_CS,
            vr: defaults::P_VR,
            uhd: defaults::P_UHD,
        }
    }
}

impl Default for WebSection {
    fn default() -> Self {
        WebSection {
            packet_log_mean: defaults::WEB_LOG_MEAN,
            packet_log_sigma: defaults::WEB_LOG_SIGMA,
            packet_min_bytes: defaults::WEB_PACKET_MIN_BYTES,
            packet_max_bytes: defaults::WEB_PACKET_MAX_BYTES,
            mean_iat_s: defaults::WEB_MEAN_IAT_S,
        }
    }
}

impl Default for ContentSharingSection {
    fn default() -> Self {
        ContentSharingSection {
            packet_bytes: defaults::CS_PACKET_BYTES,
            rate_per_s: defaults::CS_RATE_PER_S,
            batch_size: defaults::CS_BATCH,
        }
    }
}

impl Default for VrSection {
    fn default() -> Self {
        VrSection {
            packet_bytes: defaults::VR_PACKET_BYTES,
            rate_per_s: defaults::VR_RATE_PER_S,
            batch_size: defaults::VR_BATCH,
        }
    }
}

impl Default for UhdSection {
    fn default() -> Self {
        UhdSection {
            packet_min_bits: defaults::UHD_PACKET_MIN_BITS,
            packet_max_bits: defaults::UHD_PACKET_MAX_BITS,
            packet_alpha: defaults::UHD_PACKET_ALPHA,
            iat_min_s: defaults::UHD_IAT_MIN_S,
            iat_max_s: defaults::UHD_IAT_MAX_S,
            iat_alpha: defaults::UHD_IAT_ALPHA,
        }
    }
}

impl ScenarioFile {
    /// Builds and validates the runnable configuration.
    pub fn into_config(self) -> Result<ScenarioConfig> {
        let rates = EngagingRates::new(
            self.engaging.web,
            self.engaging.content_sharing,
            self.engaging.vr,
            self.engaging.uhd,
        )?;
        let web = WebBrowsing::new(
            TruncLognormal::new(
                self.web.packet_log_mean,
                self.web.packet_log_sigma,
                self.web.packet_min_bytes,
                self.web.packet_max_bytes,
            )?,
            Exponential::new(self.web.mean_iat_s)?,
        );
        let content_sharing = BatchTraffic::new(
            self.content_sharing.packet_bytes * defaults::BITS_PER_BYTE,
            self.content_sharing.rate_per_s,
            self.content_sharing.batch_size,
        )?;
        let vr = BatchTraffic::new(
            self.vr.packet_bytes * defaults::BITS_PER_BYTE,
            self.vr.rate_per_s,
            self.vr.batch_size,
        )?;
        let uhd = UhdVideo::new(
            TruncPareto::new(
                self.uhd.packet_alpha,
                self.uhd.packet_min_bits,
                self.uhd.packet_max_bits,
            )?,
            TruncPareto::new(self.uhd.iat_alpha, self.uhd.iat_min_s, self.uhd.iat_max_s)?,
        );
        let cfg = ScenarioConfig {
            rates,
            traffic: TrafficModels {
                web,
                content_sharing,
                vr,
                uhd,
            },
            n_ue: self.n_ue,
            n_runs: self.n_runs,
            seed: self.seed,
            spectral_eff: self.spectral_eff,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Parses a scenario document; an empty string yields the full defaults.
pub fn parse_scenario_str(text: &str) -> Result<ScenarioConfig> {
    let file: ScenarioFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_config()
}

/// Reads and parses a scenario file; `None` yields the full defaults.
pub fn parse_scenario(path: Option<&Path>) -> Result<ScenarioConfig> {
    match path {
        None => ScenarioFile::default().into_config(),
        Some(p) => parse_scenario_str(&std::fs::read_to_string(p)?),
    }
}

/// Stable hex digest of the fully-resolved configuration.
///
/// Every parameter is formatted with shortest-roundtrip notation in a fixed
/// order, so the id is identical across runs and platforms.
pub fn scenario_hash(cfg: &ScenarioConfig) -> String {
    let t = &cfg.traffic;
    let web = t.web.packet();
    let canonical = format!(
        "seed={};n_ue={};n_runs={};spectral_eff={};p=({},{},{},{});\
         web=({},{},{},{},{});cs=({},{},{});vr=({},{},{});\
         uhd=({},{},{},{},{},{})",
        cfg.seed,
        cfg.n_ue,
        cfg.n_runs,
        cfg.spectral_eff,
        cfg.rates.web(),
        cfg.rates.content_sharing(),
        cfg.rates.vr(),
        cfg.rates.uhd(),
        web.log_mean(),
        web.log_sigma(),
        web.min_value(),
        web.max_value(),
        t.web.iat().mean(),
        t.content_sharing.packet_bits(),
        t.content_sharing.rate_lambda(),
        t.content_sharing.batch_n(),
        t.vr.packet_bits(),
        t.vr.rate_lambda(),
        t.vr.batch_n(),
        t.uhd.packet().alpha(),
        t.uhd.packet().min_value(),
        t.uhd.packet().max_value(),
        t.uhd.iat().alpha(),
        t.uhd.iat().min_value(),
        t.uhd.iat().max_value(),
    );
    let digest = Sha256::digest(canonical.as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn empty_document_is_all_defaults() {
        let cfg = parse_scenario_str("").unwrap();
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.n_ue, 40);
        assert_eq!(cfg.n_runs, 1_000_000);
        assert_relative_eq!(cfg.spectral_eff, 29.2);
        assert_relative_eq!(cfg.rates.web(), 0.51);
        assert_relative_eq!(cfg.traffic.content_sharing.packet_bits(), 16e6);
        assert_relative_eq!(cfg.traffic.vr.packet_bits(), 160e6);
        assert_relative_eq!(cfg.traffic.uhd.packet().min_value(), 3.32e6);
        assert_relative_eq!(cfg.traffic.web.iat().mean(), 30.0);
    }

    #[test]
    fn partial_override_keeps_other_defaults() {
        let cfg = parse_scenario_str("n_ue = 1\nseed = 7\n").unwrap();
        assert_eq!(cfg.n_ue, 1);
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.n_runs, 1_000_000);
    }

    #[test]
    fn unknown_key_is_rejected_by_name() {
        let err = parse_scenario_str("bogus_knob = 3\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("bogus_knob"), "message was: {msg}");
    }

    #[test]
    fn unknown_nested_key_is_rejected() {
        let err = parse_scenario_str("[web]\npacket_stdev = 1.0\n").unwrap_err();
        assert!(err.to_string().contains("packet_stdev"));
    }

    #[test]
    fn bad_engaging_rates_are_rejected() {
        let err = parse_scenario_str(
            "[engaging]\nweb = 0.5\ncontent_sharing = 0.5\nvr = 0.1\nuhd = 0.1\n",
        )
        .unwrap_err();
        assert!(err.to_string().contains("sum to 1"), "got: {err}");
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = parse_scenario_str("").unwrap();
        let b = parse_scenario_str("").unwrap();
        assert_eq!(scenario_hash(&a), scenario_hash(&b));
        let c = parse_scenario_str("seed = 43\n").unwrap();
        assert_ne!(scenario_hash(&a), scenario_hash(&c));
        assert_eq!(scenario_hash(&a).len(), 16);
    }

    #[test]
    fn partial_section_keeps_sibling_defaults() {
        let cfg = parse_scenario_str("[content_sharing]\npacket_bytes = 1e6\n").unwrap();
        assert_relative_eq!(cfg.traffic.content_sharing.packet_bits(), 8e6);
        assert_relative_eq!(cfg.traffic.content_sharing.rate_lambda(), 8.33);
        assert_eq!(cfg.traffic.content_sharing.batch_n(), 50);
    }
}
