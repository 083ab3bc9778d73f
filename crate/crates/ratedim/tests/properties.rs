//! Property tests for the invariants that hold across the parameter space.

use proptest::prelude::*;
use ratedim::dist::{TruncLognormal, TruncPareto};
use ratedim::mix::EmpiricalDistribution;
use ratedim::rate::BatchTraffic;
use ratedim::RngStream;

proptest! {
    #[test]
    fn pareto_samples_and_density_respect_the_window(
        alpha in 0.2f64..4.0,
        lo in 1e-4f64..1e3,
        span in 1.5f64..500.0,
        seed in 0u64..1000,
    ) {
        let hi = lo * span;
        let d = TruncPareto::new(alpha, lo, hi).unwrap();
        prop_assert_eq!(d.pdf(lo * 0.99), 0.0);
        prop_assert_eq!(d.pdf(hi * 1.01), 0.0);
        let mut rng = RngStream::new(seed);
        for _ in 0..200 {
            let x = d.sample(&mut rng);
            prop_assert!(x >= lo && x <= hi);
            prop_assert!(d.pdf(x) >= 0.0);
        }
        prop_assert!(d.mean() >= lo && d.mean() <= hi);
    }

    #[test]
    fn lognormal_samples_respect_the_window(
        mu in 2.0f64..12.0,
        sigma in 0.1f64..3.0,
        lo in 1.0f64..1e3,
        span in 2.0f64..1e5,
        seed in 0u64..1000,
    ) {
        let hi = lo * span;
        let d = TruncLognormal::new(mu, sigma, lo, hi).unwrap();
        let mut rng = RngStream::new(seed);
        for _ in 0..200 {
            let x = d.sample(&mut rng);
            prop_assert!(x >= lo && x <= hi);
        }
    }

    #[test]
    fn batch_rate_law_is_scale_equivariant(
        c in 0.1f64..10.0,
        r_rel in 0.2f64..5.0,
    ) {
        // scaling the packet size by c maps pdf(r) to pdf(r/c)/c
        let base = BatchTraffic::new(16e6, 8.33, 50).unwrap();
        let scaled = BatchTraffic::new(16e6 * c, 8.33, 50).unwrap();
        let r = r_rel * base.mean_rate();
        let lhs = scaled.rate_pdf(c * r) * c;
        let rhs = base.rate_pdf(r);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1e-300));
        // and samples scale exactly up to rounding
        let mut a = RngStream::substream(5, 9);
        let mut b = RngStream::substream(5, 9);
        let ra = base.sample_rate(&mut a);
        let rb = scaled.sample_rate(&mut b);
        prop_assert!((rb / (c * ra) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn percentiles_are_monotone_in_level(
        mut xs in prop::collection::vec(1e-3f64..1e12, 1..400),
        a in 0.01f64..0.99,
        b in 0.01f64..0.99,
    ) {
        xs.iter_mut().for_each(|x| *x = x.abs().max(1e-6));
        let d = EmpiricalDistribution::from_samples(xs).unwrap();
        let (lo, hi) = (a.min(b), a.max(b));
        prop_assert!(d.percentile(lo).unwrap() <= d.percentile(hi).unwrap());
    }

    #[test]
    fn histogram_mass_sums_to_one(
        xs in prop::collection::vec(1e-3f64..1e12, 2..2000),
    ) {
        let d = EmpiricalDistribution::from_samples(xs).unwrap();
        let total: f64 = d.histogram().iter().map(|b| b.density * (b.hi - b.lo)).sum();
        prop_assert!((total - 1.0).abs() < 1e-9);
    }
}
