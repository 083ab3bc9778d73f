//! Average-rate calculator for uncompressed and coded UHD video.

use crate::error::{Error, Result};

/// Frame rates supported by UHD television, in Hz.
pub const FRAME_RATES: [f64; 9] = [120.0, 60.0, 59.94, 50.0, 30.0, 29.97, 25.0, 24.0, 23.976];

/// Bits per pixel across all color channels, per standard image types.
pub const BITS_PER_PIXEL: [u32; 7] = [1, 2, 4, 8, 16, 24, 32];

/// The bpp values with enough color depth to matter for UHD planning.
pub const UHD_BITS_PER_PIXEL: [u32; 3] = [16, 24, 32];

/// Rates above this line exceed the 20 Gbps peak-rate budget.
pub const PEAK_RATE_BPS: f64 = 20e9;

/// No compression.
pub const CODEC_UNCODED: f64 = 1.0;
/// H.264: 50% rate reduction.
pub const CODEC_H264: f64 = 0.5;
/// HEVC: a further 40% off the H.264 rate.
pub const CODEC_HEVC: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    Uhd4k,
    Uhd8k,
}

impl Resolution {
    pub fn width(self) -> u32 {
        match self {
            Resolution::Uhd4k => 3840,
            Resolution::Uhd8k => 7680,
        }
    }
    pub fn height(self) -> u32 {
        match self {
            Resolution::Uhd4k => 2160,
            Resolution::Uhd8k => 4320,
        }
    }
    pub fn label(self) -> &'static str {
        match self {
            Resolution::Uhd4k => "4K",
            Resolution::Uhd8k => "8K",
        }
    }
}

/// One video configuration: geometry, color depth, frame rate, codec factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VideoFormat {
    pub width: u32,
    pub height: u32,
    pub bpp: u32,
    pub frame_rate: f64,
    pub codec_factor: f64,
}

impl VideoFormat {
    pub fn new(width: u32, height: u32, bpp: u32, frame_rate: f64, codec_factor: f64) -> Result<Self> {
        if !BITS_PER_PIXEL.contains(&bpp) {
            return Err(Error::param(format!(
                "bits-per-pixel must be one of {BITS_PER_PIXEL:?}, got {bpp}"
            )));
        }
        if !FRAME_RATES.iter().any(|&f| (f - frame_rate).abs() < 1e-9) {
            return Err(Error::param(format!(
                "frame rate must be one of {FRAME_RATES:?}, got {frame_rate}"
            )));
        }
        if !(codec_factor > 0.0 && codec_factor <= 1.0) {
            return Err(Error::param(format!(
                "codec factor must be in (0, 1], got {codec_factor}"
            )));
        }
        if width == 0 || height == 0 {
            return Err(Error::param("resolution must be nonzero".to_string()));
        }
        Ok(VideoFormat {
            width,
            height,
            bpp,
            frame_rate,
            codec_factor,
        })
    }

    pub fn with_resolution(
        res: Resolution,
        bpp: u32,
        frame_rate: f64,
        codec_factor: f64,
    ) -> Result<Self> {
        Self::new(res.width(), res.height(), bpp, frame_rate, codec_factor)
    }

    /// Average data rate `bpp × width × height × frame_rate × codec_factor`
    /// in bits/s.
    pub fn average_rate(&self) -> f64 {
        f64::from(self.bpp) * f64::from(self.width) * f64::from(self.height) * self.frame_rate
            * self.codec_factor
    }
}

/// One row of the planning table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateTableEntry {
    pub resolution: Resolution,
    pub format: VideoFormat,
    pub rate_bps: f64,
    /// Whether the rate fits under the 20 Gbps peak-rate line.
    pub supported: bool,
}

/// Enumerates {4K, 8K} × {16, 24, 32 bpp} × all nine frame rates at the
/// given codec factor, sorted by increasing rate.
pub fn rate_table(codec_factor: f64) -> Result<Vec<RateTableEntry>> {
    if !(codec_factor > 0.0 && codec_factor <= 1.0) {
        return Err(Error::param(format!(
            "codec factor must be in (0, 1], got {codec_factor}"
        )));
    }
    let mut entries = Vec::with_capacity(54);
    for res in [Resolution::Uhd4k, Resolution::Uhd8k] {
        for &bpp in &UHD_BITS_PER_PIXEL {
            for &fr in &FRAME_RATES {
                let format = VideoFormat::with_resolution(res, bpp, fr, codec_factor)?;
                let rate_bps = format.average_rate();
                entries.push(RateTableEntry {
                    resolution: res,
                    format,
                    rate_bps,
                    supported: rate_bps <= PEAK_RATE_BPS,
                });
            }
        }
    }
    entries.sort_by(|a, b| a.rate_bps.total_cmp(&b.rate_bps));
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn uncoded_extremes() {
        let lo = VideoFormat::with_resolution(Resolution::Uhd4k, 16, 23.976, 1.0).unwrap();
        let hi = VideoFormat::with_resolution(Resolution::Uhd8k, 32, 120.0, 1.0).unwrap();
        assert_relative_eq!(lo.average_rate(), 3.181_864_550_4e9, max_relative = 1e-12);
        assert_relative_eq!(hi.average_rate(), 127.401_984e9, max_relative = 1e-12);
    }

    #[test]
    fn hevc_extremes() {
        let lo = VideoFormat::with_resolution(Resolution::Uhd4k, 16, 23.976, CODEC_HEVC).unwrap();
        let v8k60 = VideoFormat::with_resolution(Resolution::Uhd8k, 32, 60.0, CODEC_HEVC).unwrap();
        assert_relative_eq!(lo.average_rate(), 0.954_559_365_12e9, max_relative = 1e-12);
        assert_relative_eq!(v8k60.average_rate(), 19.110_297_6e9, max_relative = 1e-12);
    }

    #[test]
    fn monotone_in_every_knob() {
        let base = VideoFormat::new(3840, 2160, 16, 30.0, 0.5).unwrap().average_rate();
        assert!(VideoFormat::new(3840, 2160, 24, 30.0, 0.5).unwrap().average_rate() > base);
        assert!(VideoFormat::new(7680, 4320, 16, 30.0, 0.5).unwrap().average_rate() > base);
        assert!(VideoFormat::new(3840, 2160, 16, 50.0, 0.5).unwrap().average_rate() > base);
        assert!(VideoFormat::new(3840, 2160, 16, 30.0, 1.0).unwrap().average_rate() > base);
    }

    #[test]
    fn table_is_sorted_and_complete() {
        let t = rate_table(1.0).unwrap();
        assert_eq!(t.len(), 54);
        assert!(t.windows(2).all(|w| w[0].rate_bps <= w[1].rate_bps));
    }

    #[test]
    fn four_4k_settings_need_more_than_10g_at_32bpp() {
        // At 32 bpp exactly four 4K frame rates exceed 10 Gbps uncoded
        // (120, 60, 59.94, 50); lower bpp settings add more, so the count
        // is reported per-bpp.
        let t = rate_table(1.0).unwrap();
        let count = t
            .iter()
            .filter(|e| {
                e.resolution == Resolution::Uhd4k && e.format.bpp == 32 && e.rate_bps > 10e9
            })
            .count();
        assert_eq!(count, 4);
    }

    #[test]
    fn hevc_8k_32bpp_supported_except_120p() {
        let t = rate_table(CODEC_HEVC).unwrap();
        for e in t.iter().filter(|e| e.resolution == Resolution::Uhd8k && e.format.bpp == 32) {
            if (e.format.frame_rate - 120.0).abs() < 1e-9 {
                assert!(!e.supported, "120p must exceed the peak-rate line");
            } else {
                assert!(e.supported, "{} must fit", e.format.frame_rate);
            }
        }
    }

    #[test]
    fn h264_is_half_of_uncoded() {
        let full = rate_table(1.0).unwrap();
        let half = rate_table(CODEC_H264).unwrap();
        for (a, b) in full.iter().zip(&half) {
            assert_relative_eq!(b.rate_bps, 0.5 * a.rate_bps, max_relative = 1e-12);
        }
    }

    #[test]
    fn rejects_invalid_formats() {
        assert!(VideoFormat::new(3840, 2160, 15, 30.0, 1.0).is_err());
        assert!(VideoFormat::new(3840, 2160, 16, 31.0, 1.0).is_err());
        assert!(VideoFormat::new(3840, 2160, 16, 30.0, 0.0).is_err());
        assert!(VideoFormat::new(3840, 2160, 16, 30.0, 1.5).is_err());
        assert!(rate_table(0.0).is_err());
    }
}
