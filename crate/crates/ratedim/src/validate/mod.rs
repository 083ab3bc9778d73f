//! Independent numerical machinery that cross-checks every closed form:
//! generic ratio-distribution quadrature, numeric convolution for small
//! aggregates, goodness-of-fit statistics and normalization/moment checks.
//!
//! Everything here deliberately takes the *integration* route where the
//! models take the *algebra* route, so agreement between the two is
//! evidence, not tautology.

pub mod quad;

use crate::dist::normal::std_normal_pdf;
use crate::error::{Error, Result};
use crate::mix::ScenarioConfig;
use crate::pdf::AnalyticPdf;
use crate::rate::{UhdVideo, WebBrowsing};
use crate::rng::RngStream;
use quad::{
    integrate, integrate_pdf, integrate_pdf_weighted, integrate_to_infinity,
    integrate_with_breakpoints, QuadOptions,
};

/// Goodness-of-fit summary for one traffic model.
#[derive(Debug, Clone, Copy)]
pub struct GofReport {
    pub ks_distance: f64,
    pub n_samples: usize,
    pub max_abs_pdf_gap: f64,
    pub normalization_error: f64,
}

/// One named validation check with its measured value and threshold.
#[derive(Debug, Clone)]
pub struct NamedCheck {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl NamedCheck {
    fn below(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        NamedCheck {
            name: name.into(),
            value,
            threshold,
            pass: value.is_finite() && value < threshold,
        }
    }

    fn flag(name: impl Into<String>, raised: bool) -> Self {
        NamedCheck {
            name: name.into(),
            value: if raised { 1.0 } else { 0.0 },
            threshold: 1.0,
            pass: raised,
        }
    }
}

/// Result of running the whole validation suite.
#[derive(Debug, Clone)]
pub struct ValidationOutcome {
    pub checks: Vec<NamedCheck>,
    pub reports: Vec<(String, GofReport)>,
}

impl ValidationOutcome {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
    pub fn failures(&self) -> impl Iterator<Item = &NamedCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// KS acceptance threshold at `n` samples: 0.01 at 1e5, scaling like the
/// 1.36/sqrt(n) critical value.
pub fn ks_threshold(n: usize) -> f64 {
    0.01 * (1e5 / n as f64).sqrt()
}

/// Sup-norm distance between the empirical CDF of `sorted` samples and an
/// analytic CDF.
pub fn ks_statistic<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> Result<f64> {
    if sorted.is_empty() {
        return Err(Error::EmptySamples);
    }
    debug_assert!(sorted.windows(2).all(|w| w[0] <= w[1]), "samples not sorted");
    let n = sorted.len() as f64;
    let mut sup: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        sup = sup.max((f - i as f64 / n).abs());
        sup = sup.max(((i + 1) as f64 / n - f).abs());
    }
    Ok(sup)
}

/// Density of `num/den` at `r` by adaptive quadrature of
/// `∫ t · num(r·t) · den(t) dt` over the intersection window (the factor
/// `t` is the ratio-law Jacobian).
pub fn ratio_pdf_quadrature(
    num: &AnalyticPdf,
    den: &AnalyticPdf,
    r: f64,
    opts: QuadOptions,
) -> f64 {
    if !(r > 0.0) {
        return 0.0;
    }
    let (nlo, nhi) = num.support();
    let (dlo, dhi) = den.support();
    let t_lo = (nlo / r).max(dlo).max(0.0);
    let t_hi = if nhi.is_finite() { (nhi / r).min(dhi) } else { dhi };
    if t_hi <= t_lo {
        return 0.0;
    }
    let f = |t: f64| t * num.density(r * t) * den.density(t);
    let mut breaks: Vec<f64> = den.hints().to_vec();
    breaks.extend(num.hints().iter().map(|h| h / r));
    if t_hi.is_finite() {
        integrate_with_breakpoints(&f, t_lo, t_hi, &breaks, opts).value
    } else {
        let pivot = breaks
            .iter()
            .copied()
            .fold(t_lo.abs().max(1.0), f64::max)
            * 2.0;
        integrate_to_infinity(&f, t_lo, pivot, &breaks, opts).value
    }
}

/// `|1 - ∫ pdf|` over the declared support.
pub fn normalization_check(pdf: &AnalyticPdf) -> f64 {
    (1.0 - integrate_pdf(pdf, QuadOptions::normalization()).value).abs()
}

/// k-th moment of `pdf` by quadrature.
///
/// On an unbounded support the truncation radius doubles until the
/// increments vanish; if they never do the moment is reported as divergent
/// rather than as a large number.
pub fn moment_check(pdf: &AnalyticPdf, k: u32) -> Result<f64> {
    let opts = QuadOptions::default();
    let (lo, hi) = pdf.support();
    let weight = |x: f64| x.powi(k as i32);
    if hi.is_finite() {
        return Ok(integrate_pdf_weighted(pdf, weight, opts).value);
    }
    let f = |x: f64| weight(x) * pdf.density(x);
    let mut pivot = pdf
        .hints()
        .iter()
        .copied()
        .fold(lo.abs().max(1.0), f64::max)
        * 2.0;
    let mut total = integrate_with_breakpoints(&f, lo, pivot, pdf.hints(), opts).value;
    for _ in 0..64 {
        let next = pivot * 2.0;
        let inc = integrate(&f, pivot, next, opts).value;
        total += inc;
        pivot = next;
        if inc.abs() <= 1e-9 * total.abs().max(f64::MIN_POSITIVE) {
            return Ok(total);
        }
    }
    Err(Error::DivergentMoment { order: k })
}

/// Truncates an unbounded support where the remaining tail mass drops
/// below `tail_mass`.
pub fn effective_support(pdf: &AnalyticPdf, tail_mass: f64) -> (f64, f64) {
    let (lo, hi) = pdf.support();
    if hi.is_finite() {
        return (lo, hi);
    }
    let opts = QuadOptions::normalization();
    let mut pivot = pdf
        .hints()
        .iter()
        .copied()
        .fold(lo.abs().max(1.0), f64::max)
        * 2.0;
    for _ in 0..64 {
        let tail = {
            let f = |u: f64| pdf.density(pivot / u) * pivot / (u * u);
            integrate(&f, 0.0, 1.0, opts).value
        };
        if tail <= tail_mass {
            return (lo, pivot);
        }
        pivot *= 2.0;
    }
    (lo, pivot)
}

/// A monotone CDF tabulated on a grid, linearly interpolated.
#[derive(Debug, Clone)]
pub struct GridCdf {
    xs: Vec<f64>,
    ps: Vec<f64>,
}

impl GridCdf {
    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.xs[0] {
            return 0.0;
        }
        if x >= *self.xs.last().unwrap() {
            return *self.ps.last().unwrap();
        }
        let i = self.xs.partition_point(|&g| g <= x) - 1;
        let (x0, x1) = (self.xs[i], self.xs[i + 1]);
        let (p0, p1) = (self.ps[i], self.ps[i + 1]);
        p0 + (p1 - p0) * (x - x0) / (x1 - x0)
    }
}

/// Cumulative trapezoid integration of `pdf` on a log-spaced grid (with the
/// pdf's hints inserted), dense enough for KS comparisons.
pub fn cdf_from_pdf(pdf: &AnalyticPdf, n: usize) -> GridCdf {
    let (lo, hi) = effective_support(pdf, 1e-12);
    let mut xs = if lo > 0.0 {
        log_grid(lo, hi, n)
    } else {
        (0..=n)
            .map(|i| lo + (hi - lo) * i as f64 / n as f64)
            .collect()
    };
    xs.extend(pdf.hints().iter().copied().filter(|&h| h > lo && h < hi));
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let mut ps = Vec::with_capacity(xs.len());
    let mut acc = 0.0;
    let mut prev_x = xs[0];
    let mut prev_f = pdf.density(prev_x);
    ps.push(0.0);
    for &x in &xs[1..] {
        let f = pdf.density(x);
        acc += 0.5 * (prev_f + f) * (x - prev_x);
        ps.push(acc.min(1.0));
        prev_x = x;
        prev_f = f;
    }
    GridCdf { xs, ps }
}

/// 100-point (or `n`-point) logarithmic grid.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..=n)
        .map(|i| (llo + (lhi - llo) * i as f64 / n as f64).exp())
        .collect()
}

/// Numeric convolution of 2 or 3 densities onto a log-spaced grid.
///
/// Each output point evaluates the symmetrized pair integral
/// `½ [∫ f(x) g(r−x) dx + ∫ g(x) f(r−x) dx]` with adaptive quadrature
/// seeded by both inputs' hints and a geometric ladder from both window
/// edges; the symmetrization makes the operation exactly commutative.
pub fn convolve_pdfs_numeric(pdfs: &[AnalyticPdf]) -> Result<AnalyticPdf> {
    if !(2..=3).contains(&pdfs.len()) {
        return Err(Error::UnsupportedConvolutionSize(pdfs.len()));
    }
    let mut sorted: Vec<&AnalyticPdf> = pdfs.iter().collect();
    sorted.sort_by(|a, b| {
        let (alo, ahi) = a.support();
        let (blo, bhi) = b.support();
        alo.total_cmp(&blo).then(ahi.total_cmp(&bhi))
    });
    let mut acc = pair_convolve(sorted[0], sorted[1]);
    if sorted.len() == 3 {
        acc = pair_convolve(&acc, sorted[2]);
    }
    Ok(acc)
}

/// Interpolating carrier over tabulated `(grid, values)` pairs.
fn grid_pdf(grid: Vec<f64>, values: Vec<f64>) -> AnalyticPdf {
    let (lo, hi) = (grid[0], *grid.last().unwrap());
    let hints = grid.clone();
    AnalyticPdf::new(lo, hi, move |r| {
        if r < grid[0] || r > *grid.last().unwrap() {
            return 0.0;
        }
        let i = grid.partition_point(|&x| x <= r).min(grid.len() - 1);
        if i == 0 {
            return values[0];
        }
        let (x0, x1) = (grid[i - 1], grid[i]);
        let (y0, y1) = (values[i - 1], values[i]);
        y0 + (y1 - y0) * (r - x0) / (x1 - x0)
    })
    .with_hints(hints)
}

/// The mixture law the Monte Carlo sampler actually follows.
///
/// The closed-form mixture carries the log-packet web law; the sampler
/// draws `8·packet/iat`. For sampler-facing cross-checks (the small-cell
/// convolution test) the web component is therefore tabulated from the
/// ratio quadrature of the bit-scaled packet law, while the other three
/// components keep their closed forms.
pub fn sampled_mixture_pdf(cfg: &ScenarioConfig) -> AnalyticPdf {
    let web = &cfg.traffic.web;
    let p = web.packet();
    // 8X for lognormal X is again lognormal: shift the log-mean by ln 8
    let bits = crate::dist::TruncLognormal::new(
        p.log_mean() + 8.0f64.ln(),
        p.log_sigma(),
        8.0 * p.min_value(),
        8.0 * p.max_value(),
    )
    .expect("scaled packet law");
    let num = AnalyticPdf::new(bits.min_value(), bits.max_value(), move |x| bits.pdf(x));
    let den = exponential_iat_pdf(web);

    let t_mean = web.iat().mean();
    // lower edge: smallest packet over a 40-mean IAT (tail mass ~e^-40);
    // upper edge: the 1/r tail down to ~1e-7 of remaining mass
    let r_lo = bits.min_value() / (t_mean * 40.0);
    let r_hi = bits.mean() / t_mean * 1e7;
    let opts = QuadOptions {
        abs_tol: 0.0,
        rel_tol: 1e-7,
        max_panels: 1000,
    };
    let grid = log_grid(r_lo, r_hi, 2048);
    let values: Vec<f64> = grid
        .iter()
        .map(|&r| ratio_pdf_quadrature(&num, &den, r, opts))
        .collect();
    let web_tab = grid_pdf(grid, values);

    let cfg = *cfg;
    let mut hints: Vec<f64> = web_tab
        .hints()
        .iter()
        .copied()
        .step_by(128)
        .collect();
    hints.extend_from_slice(cfg.traffic.content_sharing.analytic_pdf().hints());
    hints.extend_from_slice(cfg.traffic.vr.analytic_pdf().hints());
    let (uhd_lo, uhd_hi) = cfg.traffic.uhd.support();
    hints.extend_from_slice(cfg.traffic.uhd.analytic_pdf().hints());
    hints.push(uhd_lo);
    hints.push(uhd_hi);
    AnalyticPdf::new(0.0, f64::INFINITY, move |r| {
        if !(r > 0.0) {
            return 0.0;
        }
        cfg.rates.web() * web_tab.density(r)
            + cfg.rates.content_sharing() * cfg.traffic.content_sharing.rate_pdf(r)
            + cfg.rates.vr() * cfg.traffic.vr.rate_pdf(r)
            + cfg.rates.uhd() * cfg.traffic.uhd.rate_pdf(r)
    })
    .with_hints(hints)
}

const CONV_GRID: usize = 1024;

fn pair_convolve(f: &AnalyticPdf, g: &AnalyticPdf) -> AnalyticPdf {
    let opts = QuadOptions {
        abs_tol: 1e-12,
        rel_tol: 1e-7,
        max_panels: 2000,
    };
    let (flo, fhi) = effective_support(f, 1e-9);
    let (glo, ghi) = effective_support(g, 1e-9);
    let sum_lo = flo + glo;
    let sum_hi = fhi + ghi;
    let grid_lo = sum_lo.max(sum_hi * 1e-12);
    let grid = log_grid(grid_lo, sum_hi, CONV_GRID);

    let same = f.same_density(g);
    let values: Vec<f64> = grid
        .iter()
        .map(|&r| {
            let a = directed_conv_at(f, g, r, flo, fhi, glo, ghi, opts);
            if same {
                a
            } else {
                0.5 * (a + directed_conv_at(g, f, r, glo, ghi, flo, fhi, opts))
            }
        })
        .collect();
    grid_pdf(grid, values)
}

#[allow(clippy::too_many_arguments)]
fn directed_conv_at(
    f: &AnalyticPdf,
    g: &AnalyticPdf,
    r: f64,
    flo: f64,
    fhi: f64,
    glo: f64,
    ghi: f64,
    opts: QuadOptions,
) -> f64 {
    let a = flo.max(r - ghi);
    let b = fhi.min(r - glo);
    if b <= a {
        return 0.0;
    }
    let integrand = |x: f64| f.density(x) * g.density(r - x);
    let mut breaks: Vec<f64> = f.hints().to_vec();
    breaks.extend(g.hints().iter().map(|h| r - h));
    // geometric ladder from both edges so that narrow structure anywhere in
    // the window gets its own panel
    let span = b - a;
    let mut step = 0.5 * span;
    for _ in 0..36 {
        breaks.push(a + step);
        breaks.push(b - step);
        step *= 0.5;
    }
    integrate_with_breakpoints(&integrand, a, b, &breaks, opts).value
}

/// CDF of the sampled web rate `8·packet/iat` by quadrature of
/// `E[exp(-8X / (r·T̄))]` over the packet law.
pub fn web_sampled_rate_cdf(model: &WebBrowsing, r: f64) -> f64 {
    if !(r > 0.0) {
        return 0.0;
    }
    let p = model.packet();
    let (mu, sigma, z) = (p.log_mean(), p.log_sigma(), p.truncation_mass());
    let (ylo, yhi) = (p.min_value().ln(), p.max_value().ln());
    let t_mean = model.iat().mean();
    let f = |y: f64| {
        std_normal_pdf((y - mu) / sigma) / (sigma * z) * (-8.0 * y.exp() / (r * t_mean)).exp()
    };
    integrate(
        &f,
        ylo,
        yhi,
        QuadOptions {
            abs_tol: 1e-11,
            rel_tol: 1e-9,
            max_panels: 400,
        },
    )
    .value
    .clamp(0.0, 1.0)
}

/// Truncated-normal density of `ln(packet)` as an [`AnalyticPdf`]; the
/// numerator law of the web ratio integral.
pub fn web_log_packet_pdf(model: &WebBrowsing) -> AnalyticPdf {
    let p = *model.packet();
    let (mu, sigma, z) = (p.log_mean(), p.log_sigma(), p.truncation_mass());
    let (ylo, yhi) = (p.min_value().ln(), p.max_value().ln());
    AnalyticPdf::new(ylo, yhi, move |y| {
        std_normal_pdf((y - mu) / sigma) / (sigma * z)
    })
    .with_hints([mu.clamp(ylo, yhi)])
}

pub fn exponential_iat_pdf(model: &WebBrowsing) -> AnalyticPdf {
    let iat = *model.iat();
    let m = iat.mean();
    AnalyticPdf::new(0.0, f64::INFINITY, move |t| iat.pdf(t)).with_hints([m, 5.0 * m])
}

fn pareto_pdf_carrier(p: crate::dist::TruncPareto) -> AnalyticPdf {
    let (lo, hi) = (p.min_value(), p.max_value());
    AnalyticPdf::new(lo, hi, move |x| p.pdf(x))
}

/// CDF of the UHD rate law by quadrature of `E_T[F_X(r·T)]`.
pub fn uhd_rate_cdf(model: &UhdVideo, r: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    let packet = *model.packet();
    let iat = *model.iat();
    let f = |t: f64| packet.cdf(r * t) * iat.pdf(t);
    integrate(
        &f,
        iat.min_value(),
        iat.max_value(),
        QuadOptions {
            abs_tol: 1e-11,
            rel_tol: 1e-9,
            max_panels: 400,
        },
    )
    .value
    .clamp(0.0, 1.0)
}

// ---------------------------------------------------------------------------
// the full check suite
// ---------------------------------------------------------------------------

/// Runs every oracle/closed-form and sampler/pdf check against the given
/// scenario's models. `n_samples` controls the Monte Carlo sizes; KS
/// thresholds scale accordingly.
pub fn run_all_checks(cfg: &ScenarioConfig, n_samples: usize) -> ValidationOutcome {
    let mut checks = Vec::new();
    let mut reports = Vec::new();
    let ks_thr = ks_threshold(n_samples);
    let seed = cfg.seed;

    // --- web: closed form vs ratio quadrature, normalization, sampler ---
    let web = &cfg.traffic.web;
    let web_pdf = web.analytic_pdf();
    let scale = web.rate_scale();
    // pure relative tolerance: the rate densities have tiny absolute scale
    // (1/(bits/s)), so any absolute floor would mask relative error
    let oracle_opts = QuadOptions {
        abs_tol: 0.0,
        rel_tol: 1e-9,
        max_panels: 4000,
    };
    let web_gap = {
        let num = web_log_packet_pdf(web);
        let den = exponential_iat_pdf(web);
        max_rel_gap(&log_grid(scale / 30.0, scale * 300.0, 100), |r| {
            (
                web.rate_pdf(r).unwrap_or(0.0),
                ratio_pdf_quadrature(&num, &den, r, oracle_opts),
            )
        })
    };
    checks.push(NamedCheck::below("web pdf vs ratio quadrature (rel)", web_gap, 1e-6));
    let web_norm = normalization_check(&web_pdf);
    checks.push(NamedCheck::below("web pdf normalization", web_norm, 1e-4));
    let web_ks = {
        let mut rng = RngStream::substream(seed, STREAM_WEB);
        let mut s: Vec<f64> = (0..n_samples).map(|_| web.sample_rate(&mut rng)).collect();
        s.sort_by(f64::total_cmp);
        ks_statistic(&s, |r| web_sampled_rate_cdf(web, r)).unwrap()
    };
    checks.push(NamedCheck::below("web sampler vs ratio-law cdf (KS)", web_ks, ks_thr));
    checks.push(NamedCheck::flag(
        "web analytic mean divergence flagged",
        matches!(moment_check(&web_pdf, 1), Err(Error::DivergentMoment { .. })),
    ));
    reports.push((
        "web".to_string(),
        GofReport {
            ks_distance: web_ks,
            n_samples,
            max_abs_pdf_gap: web_gap,
            normalization_error: web_norm,
        },
    ));

    // --- content sharing and vr: cdf identity, derivative, sampler ---
    for (name, model, stream) in [
        ("cs", &cfg.traffic.content_sharing, STREAM_CS),
        ("vr", &cfg.traffic.vr, STREAM_VR),
    ] {
        let pdf = model.analytic_pdf();
        let grid = log_grid(model.mean_rate() / 5.0, model.mean_rate() * 3.0, 100);

        let ident = grid
            .iter()
            .map(|&r| {
                let nsr = f64::from(model.batch_n()) * model.packet_bits() / r;
                let erlang = crate::dist::Erlang::new(model.batch_n(), model.rate_lambda()).unwrap();
                (model.rate_cdf(r) - (1.0 - erlang.cdf(nsr))).abs()
            })
            .fold(0.0, f64::max);
        checks.push(NamedCheck::below(
            format!("{name} cdf vs erlang complement (abs)"),
            ident,
            1e-10,
        ));

        let mode = model.mode_rate();
        let deriv_gap = max_rel_gap(
            &grid
                .iter()
                .copied()
                .filter(|&r| (r - mode).abs() > 0.05 * mode)
                .collect::<Vec<_>>(),
            |r| {
                // differentiate whichever of cdf / -survival keeps
                // precision at this point; both have the pdf as derivative
                let d = if model.rate_cdf(r) <= 0.5 {
                    richardson_derivative(|x| model.rate_cdf(x), r)
                } else {
                    richardson_derivative(|x| -model.rate_survival(x), r)
                };
                (model.rate_pdf(r), d)
            },
        );
        checks.push(NamedCheck::below(
            format!("{name} pdf vs cdf derivative (rel)"),
            deriv_gap,
            1e-6,
        ));

        let norm = normalization_check(&pdf);
        checks.push(NamedCheck::below(format!("{name} pdf normalization"), norm, 1e-4));

        let ks = {
            let mut rng = RngStream::substream(seed, stream);
            let mut s: Vec<f64> = (0..n_samples).map(|_| model.sample_rate(&mut rng)).collect();
            s.sort_by(f64::total_cmp);
            ks_statistic(&s, |r| model.rate_cdf(r)).unwrap()
        };
        checks.push(NamedCheck::below(format!("{name} sampler vs analytic cdf (KS)"), ks, ks_thr));

        let mean_gap = match moment_check(&pdf, 1) {
            Ok(m) => (m / model.mean_rate() - 1.0).abs(),
            Err(_) => f64::INFINITY,
        };
        checks.push(NamedCheck::below(
            format!("{name} quadrature mean vs closed form (rel)"),
            mean_gap,
            1e-3,
        ));

        reports.push((
            name.to_string(),
            GofReport {
                ks_distance: ks,
                n_samples,
                max_abs_pdf_gap: deriv_gap,
                normalization_error: norm,
            },
        ));
    }

    // --- uhd: closed form vs ratio quadrature, normalization, sampler ---
    let uhd = &cfg.traffic.uhd;
    let uhd_pdf = uhd.analytic_pdf();
    let (ulo, uhi) = uhd.support();
    let uhd_gap = {
        let num = pareto_pdf_carrier(*uhd.packet());
        let den = pareto_pdf_carrier(*uhd.iat());
        max_rel_gap(&log_grid(ulo * 1.001, uhi * 0.999, 100), |r| {
            (
                uhd.rate_pdf(r),
                ratio_pdf_quadrature(&num, &den, r, oracle_opts),
            )
        })
    };
    checks.push(NamedCheck::below("uhd pdf vs ratio quadrature (rel)", uhd_gap, 1e-6));
    let uhd_norm = normalization_check(&uhd_pdf);
    checks.push(NamedCheck::below("uhd pdf normalization", uhd_norm, 1e-4));
    let uhd_ks = {
        let cdf = cdf_from_pdf(&uhd_pdf, 4096);
        let mut rng = RngStream::substream(seed, STREAM_UHD);
        let mut s: Vec<f64> = (0..n_samples).map(|_| uhd.sample_rate(&mut rng)).collect();
        s.sort_by(f64::total_cmp);
        ks_statistic(&s, |r| cdf.eval(r)).unwrap()
    };
    checks.push(NamedCheck::below("uhd sampler vs analytic cdf (KS)", uhd_ks, ks_thr));
    reports.push((
        "uhd".to_string(),
        GofReport {
            ks_distance: uhd_ks,
            n_samples,
            max_abs_pdf_gap: uhd_gap,
            normalization_error: uhd_norm,
        },
    ));

    // --- base laws: normalization to 1e-6 and sampler KS ---
    base_law_checks(cfg, n_samples, ks_thr, &mut checks);

    // --- mixture normalization ---
    checks.push(NamedCheck::below(
        "mixture pdf normalization",
        normalization_check(&cfg.mixture_analytic_pdf()),
        1e-3,
    ));

    // --- trunc pareto mean: closed form vs quadrature ---
    let packet = *cfg.traffic.uhd.packet();
    let pareto_mean_gap = {
        let pdf = pareto_pdf_carrier(packet);
        let quad_mean = integrate_pdf_weighted(&pdf, |x| x, QuadOptions::default()).value;
        (quad_mean / packet.mean() - 1.0).abs()
    };
    checks.push(NamedCheck::below(
        "pareto mean quadrature vs closed form (rel)",
        pareto_mean_gap,
        1e-9,
    ));

    ValidationOutcome { checks, reports }
}

// substream indices reserved by the validation suite
const STREAM_WEB: u64 = 1_000_001;
const STREAM_CS: u64 = 1_000_002;
const STREAM_VR: u64 = 1_000_003;
const STREAM_UHD: u64 = 1_000_004;
const STREAM_BASE: u64 = 1_000_010;

fn base_law_checks(
    cfg: &ScenarioConfig,
    n_samples: usize,
    ks_thr: f64,
    checks: &mut Vec<NamedCheck>,
) {
    let packet = *cfg.traffic.web.packet();
    let iat = *cfg.traffic.web.iat();
    let erlang =
        crate::dist::Erlang::new(cfg.traffic.content_sharing.batch_n(), cfg.traffic.content_sharing.rate_lambda())
            .unwrap();
    let pareto = *cfg.traffic.uhd.packet();

    let lognormal_pdf = {
        let p = packet;
        AnalyticPdf::new(p.min_value(), p.max_value(), move |x| p.pdf(x))
    };
    let exponential_pdf = {
        let m = iat.mean();
        AnalyticPdf::new(0.0, f64::INFINITY, move |t| iat.pdf(t)).with_hints([m, 5.0 * m])
    };
    let erlang_pdf = {
        let e = erlang;
        let m = e.mean();
        AnalyticPdf::new(0.0, f64::INFINITY, move |t| e.pdf(t)).with_hints([m * 0.5, m, m * 2.0])
    };
    let pareto_pdf = pareto_pdf_carrier(pareto);

    for (name, pdf) in [
        ("lognormal", &lognormal_pdf),
        ("exponential", &exponential_pdf),
        ("erlang", &erlang_pdf),
        ("pareto", &pareto_pdf),
    ] {
        checks.push(NamedCheck::below(
            format!("{name} base-law normalization"),
            normalization_check(pdf),
            1e-6,
        ));
    }

    let mut rng = RngStream::substream(cfg.seed, STREAM_BASE);
    let mut draw_ks = |name: &str, sampler: &mut dyn FnMut(&mut RngStream) -> f64, cdf: &dyn Fn(f64) -> f64| {
        let mut s: Vec<f64> = (0..n_samples).map(|_| sampler(&mut rng)).collect();
        s.sort_by(f64::total_cmp);
        checks.push(NamedCheck::below(
            format!("{name} base-law sampler (KS)"),
            ks_statistic(&s, cdf).unwrap(),
            ks_thr,
        ));
    };
    draw_ks("lognormal", &mut |r| packet.sample(r), &|x| packet.cdf(x));
    draw_ks("exponential", &mut |r| iat.sample(r), &|x| iat.cdf(x));
    draw_ks("erlang", &mut |r| erlang.sample(r), &|x| erlang.cdf(x));
    draw_ks("pareto", &mut |r| pareto.sample(r), &|x| pareto.cdf(x));
}

/// Largest relative gap between paired evaluations over a grid, ignoring
/// points where both sides are vanishingly small.
fn max_rel_gap<F: Fn(f64) -> (f64, f64)>(grid: &[f64], eval: F) -> f64 {
    let mut worst: f64 = 0.0;
    for &r in grid {
        let (a, b) = eval(r);
        if a.abs() < 1e-300 && b.abs() < 1e-300 {
            continue;
        }
        worst = worst.max((a - b).abs() / b.abs().max(a.abs()));
    }
    worst
}

/// Richardson-extrapolated central difference of `f` at `x`.
fn richardson_derivative<F: Fn(f64) -> f64>(f: F, x: f64) -> f64 {
    let h = x * 1e-4;
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * d(0.5 * h) - d(h)) / 3.0
}
