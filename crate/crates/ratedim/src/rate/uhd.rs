//! UHD-video instantaneous-rate model: a ratio of truncated Pareto laws.
//!
//! Packet sizes (bits) and inter-arrival times (seconds) both follow
//! truncated Pareto distributions, so the rate `X/T` lives on
//! `[x_min/t_max, x_max/t_min]` and has a closed-form density obtained by
//! integrating the joint law along the ray `x = r·t`: the integrand is a
//! truncated Pareto in `t` with combined index `ᾱ = α_x + α_t + 1`, whose
//! mean supplies the closed form.

use crate::dist::pareto::trunc_pareto_mean;
use crate::dist::TruncPareto;
use crate::pdf::AnalyticPdf;
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UhdVideo {
    packet: TruncPareto,
    iat: TruncPareto,
}

impl UhdVideo {
    pub fn new(packet: TruncPareto, iat: TruncPareto) -> Self {
        UhdVideo { packet, iat }
    }

    pub fn packet(&self) -> &TruncPareto {
        &self.packet
    }
    pub fn iat(&self) -> &TruncPareto {
        &self.iat
    }

    /// Rate support `[x_min/t_max, x_max/t_min]` in bits/s.
    pub fn support(&self) -> (f64, f64) {
        (
            self.packet.min_value() / self.iat.max_value(),
            self.packet.max_value() / self.iat.min_value(),
        )
    }

    /// Integration window in `t` for a given rate, empty outside support.
    fn t_window(&self, r: f64) -> Option<(f64, f64)> {
        let t_lo = (self.packet.min_value() / r).max(self.iat.min_value());
        let t_hi = (self.packet.max_value() / r).min(self.iat.max_value());
        (t_lo < t_hi).then_some((t_lo, t_hi))
    }

    /// Closed-form rate density; zero outside the support.
    pub fn rate_pdf(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        let Some((t_lo, t_hi)) = self.t_window(r) else {
            return 0.0;
        };
        let (ax, at) = (self.packet.alpha(), self.iat.alpha());
        let alpha_bar = ax + at + 1.0;

        let cx = ax * self.packet.min_value().powf(ax)
            / (1.0 - (self.packet.min_value() / self.packet.max_value()).powf(ax));
        let ct = at * self.iat.min_value().powf(at)
            / (1.0 - (self.iat.min_value() / self.iat.max_value()).powf(at));

        // prefactor times a truncated-Pareto(ᾱ) density in t, integrated
        // against t: the truncated-Pareto mean
        let window_norm =
            alpha_bar * t_lo.powf(alpha_bar) / (1.0 - (t_lo / t_hi).powf(alpha_bar));
        let k_bar = cx * ct * r.powf(-ax - 1.0) / window_norm;
        k_bar * trunc_pareto_mean(alpha_bar, t_lo, t_hi)
    }

    /// One rate draw: packet / iat.
    pub fn sample_rate(&self, rng: &mut RngStream) -> f64 {
        self.packet.sample(rng) / self.iat.sample(rng)
    }

    pub fn analytic_pdf(&self) -> AnalyticPdf {
        let model = *self;
        let (lo, hi) = self.support();
        // interior kinks where the t-window switches which bound is active
        let k1 = self.packet.min_value() / self.iat.min_value();
        let k2 = self.packet.max_value() / self.iat.max_value();
        AnalyticPdf::new(lo, hi, move |r| model.rate_pdf(r)).with_hints([k1, k2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn baseline() -> UhdVideo {
        UhdVideo::new(
            TruncPareto::new(1.67, 3.32e6, 20.75e6).unwrap(),
            TruncPareto::new(1.67, 0.832e-3, 5.2e-3).unwrap(),
        )
    }

    #[test]
    fn support_endpoints() {
        let (lo, hi) = baseline().support();
        assert_relative_eq!(lo, 638_461_538.461_538_4, max_relative = 1e-12);
        assert_relative_eq!(hi, 24_939_903_846.153_847, max_relative = 1e-12);
    }

    #[test]
    fn pdf_reference_values() {
        // Frozen from an independent quadrature of the ratio integral.
        let u = baseline();
        assert_relative_eq!(u.rate_pdf(1e9), 7.077_245_616_038_865e-11, max_relative = 1e-10);
        assert_relative_eq!(u.rate_pdf(4.8e9), 1.400_843_491_503_047_3e-10, max_relative = 1e-10);
        assert_relative_eq!(u.rate_pdf(2e10), 1.624_217_290_172_955_2e-12, max_relative = 1e-10);
    }

    #[test]
    fn pdf_zero_outside_support() {
        let u = baseline();
        let (lo, hi) = u.support();
        assert_eq!(u.rate_pdf(lo * 0.99), 0.0);
        assert_eq!(u.rate_pdf(hi * 1.01), 0.0);
        assert_eq!(u.rate_pdf(-1.0), 0.0);
        assert_eq!(u.rate_pdf(0.0), 0.0);
    }

    #[test]
    fn samples_stay_in_support() {
        let u = baseline();
        let (lo, hi) = u.support();
        let mut rng = RngStream::new(6);
        for _ in 0..50_000 {
            let r = u.sample_rate(&mut rng);
            assert!(r >= lo && r <= hi);
        }
    }

    #[test]
    fn degenerate_iat_rescales_packet_law() {
        // Constant denominator: the rate is the packet law scaled by 1/t0.
        let t0 = 2e-3;
        let u = UhdVideo::new(
            TruncPareto::new(1.67, 3.32e6, 20.75e6).unwrap(),
            TruncPareto::new(1.67, t0, t0 * (1.0 + 1e-12)).unwrap(),
        );
        let packet = TruncPareto::new(1.67, 3.32e6, 20.75e6).unwrap();
        let mut rng = RngStream::new(7);
        for _ in 0..1000 {
            let r = u.sample_rate(&mut rng);
            assert!(r >= 3.32e6 / t0 * (1.0 - 1e-9) && r <= 20.75e6 / t0 * (1.0 + 1e-9));
        }
        // density transforms as pdf(r) = t0 * packet_pdf(r * t0)
        for &r in &[2e9, 5e9, 9e9] {
            assert_relative_eq!(
                u.rate_pdf(r),
                t0 * packet.pdf(r * t0),
                max_relative = 1e-3
            );
        }
    }
}
