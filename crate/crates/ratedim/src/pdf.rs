//! A uniform carrier for evaluable densities over an explicit support.

use std::sync::Arc;

/// An evaluable density together with its support interval.
///
/// `hints` lists abscissae where the density has localized structure
/// (modes, component edges, kinks). Quadrature seeds its subdivision from
/// them; without hints a multi-decade mixture can hide entire components
/// from an adaptive integrator.
#[derive(Clone)]
pub struct AnalyticPdf {
    lo: f64,
    hi: f64,
    hints: Vec<f64>,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl AnalyticPdf {
    /// `hi` may be `f64::INFINITY` for laws with an integrable tail.
    pub fn new(lo: f64, hi: f64, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        assert!(lo < hi, "support must be a nonempty interval");
        AnalyticPdf {
            lo,
            hi,
            hints: Vec::new(),
            f: Arc::new(f),
        }
    }

    pub fn with_hints(mut self, hints: impl IntoIterator<Item = f64>) -> Self {
        let (lo, hi) = (self.lo, self.hi);
        self.hints = hints.into_iter().filter(|&x| x > lo && x < hi).collect();
        self.hints.sort_by(f64::total_cmp);
        self.hints.dedup();
        self
    }

    /// Density at `x`; zero outside the declared support.
    pub fn density(&self, x: f64) -> f64 {
        if x < self.lo || x > self.hi {
            0.0
        } else {
            (self.f)(x)
        }
    }

    pub fn support(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn hints(&self) -> &[f64] {
        &self.hints
    }

    /// True when both carriers share the same underlying density function
    /// and support (e.g. clones); lets self-convolutions skip the mirrored
    /// integral.
    pub fn same_density(&self, other: &AnalyticPdf) -> bool {
        Arc::ptr_eq(&self.f, &other.f) && self.lo == other.lo && self.hi == other.hi
    }
}

impl std::fmt::Debug for AnalyticPdf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AnalyticPdf")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("hints", &self.hints)
            .finish()
    }
}
