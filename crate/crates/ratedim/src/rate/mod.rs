//! Per-traffic-type instantaneous-rate models.

pub mod batch;
pub mod uhd;
pub mod video;
pub mod web;

pub use batch::BatchTraffic;
pub use uhd::UhdVideo;
pub use video::{rate_table, RateTableEntry, Resolution, VideoFormat};
pub use web::WebBrowsing;
