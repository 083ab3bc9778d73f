//! Web-browsing instantaneous-rate model.
//!
//! Packet sizes follow a truncated lognormal (bytes) and reading times an
//! exponential law. Two rate objects coexist on purpose:
//!
//! * [`WebBrowsing::rate_pdf`] — the closed-form density of the ratio
//!   `ln(packet bytes) / iat`, obtained by completing the square in the
//!   joint law and reading off a truncated-normal mean. This is the
//!   analytic curve the toolkit plots and validates.
//! * [`WebBrowsing::sample_rate`] — Monte Carlo draws of
//!   `8 · packet / iat` in bits/s, the physically meaningful rate.
//!
//! The two laws are different; nothing here hides that. The validation
//! module checks each against its own independent oracle and the plotting
//! command annotates the divergence.

use crate::dist::normal::{ln_normal_mass, trunc_normal_mean};
use crate::dist::{Exponential, TruncLognormal};
use crate::error::{Error, Result};
use crate::pdf::AnalyticPdf;
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WebBrowsing {
    packet: TruncLognormal,
    iat: Exponential,
}

impl WebBrowsing {
    pub fn new(packet: TruncLognormal, iat: Exponential) -> Self {
        WebBrowsing { packet, iat }
    }

    pub fn packet(&self) -> &TruncLognormal {
        &self.packet
    }
    pub fn iat(&self) -> &Exponential {
        &self.iat
    }

    /// Closed-form density of `ln(packet) / iat` at `r > 0`.
    ///
    /// Completing the square turns the joint density at `(r·t, t)` into a
    /// scaled normal in `t` with
    /// `σ̄ = σ/r`, `μ̄ = μ/r − σ²/(T·r²)`, so the ratio density is the
    /// prefactor `exp(A)/(T·Z·r)` times the normal mass on the truncation
    /// window times its truncated mean. All pieces are combined in log
    /// space: far from the bulk the mass underflows while the prefactor
    /// overflows, yet their product stays representable.
    pub fn rate_pdf(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::param(format!("rate must be positive, got {r}")));
        }
        let mu = self.packet.log_mean();
        let sigma = self.packet.log_sigma();
        let t_mean = self.iat.mean();
        let z = self.packet.truncation_mass();

        let t_lo = (self.packet.min_value().ln() / r).max(0.0);
        let t_hi = self.packet.max_value().ln() / r;
        if t_hi <= t_lo {
            return Ok(0.0);
        }

        let sigma_bar = sigma / r;
        let mu_bar = mu / r - sigma * sigma / (t_mean * r * r);
        // exponent of the completed square: (μ̄² − (μ/r)²) / (2σ̄²)
        let a_exp = -(mu_bar + mu / r) / (2.0 * t_mean);

        let a_hat = (t_lo - mu_bar) / sigma_bar;
        let b_hat = (t_hi - mu_bar) / sigma_bar;
        let ln_mass = ln_normal_mass(a_hat, b_hat);
        if !ln_mass.is_finite() {
            return Ok(0.0);
        }
        let tmean = match trunc_normal_mean(mu_bar, sigma_bar, t_lo, t_hi) {
            Ok(m) => m,
            Err(Error::MassUnderflow { .. }) => return Ok(0.0),
            Err(e) => return Err(e),
        };
        if tmean <= 0.0 {
            return Ok(0.0);
        }
        let ln_f = a_exp + ln_mass + tmean.ln() - (t_mean * z * r).ln();
        Ok(ln_f.exp())
    }

    /// One Monte Carlo rate draw: `8 · packet_bytes / iat` in bits/s.
    pub fn sample_rate(&self, rng: &mut RngStream) -> f64 {
        let x = self.packet.sample(rng);
        let t = self.iat.sample(rng);
        8.0 * x / t
    }

    /// The closed-form law as an [`AnalyticPdf`] on `(0, ∞)`.
    pub fn analytic_pdf(&self) -> AnalyticPdf {
        let model = *self;
        let scale = self.rate_scale();
        AnalyticPdf::new(0.0, f64::INFINITY, move |r| {
            model.rate_pdf(r).unwrap_or(0.0)
        })
        .with_hints([
            scale * 0.01,
            scale * 0.1,
            scale,
            scale * 10.0,
            scale * 100.0,
        ])
    }

    /// Characteristic magnitude of the closed-form rate law.
    pub fn rate_scale(&self) -> f64 {
        let mid = 0.5 * (self.packet.min_value().ln() + self.packet.max_value().ln());
        mid / self.iat.mean()
    }
}
