//! Khintchine-type 0–∞ laws: integral criteria and Monte-Carlo experiments.
//!
//! For an approximation function `φ`, the integral `∫₁^∞ φ(t)^δ dt/t`
//! decides whether almost every `x` has infinitely many orbit points with
//! `|x − r| ≤ φ(h(r))/h(r)`.  [`integral_test`] classifies the integral
//! numerically; [`monte_carlo_liminf`] samples targets and records
//! `m(x) = min (h(r)/φ(h(r)))·|x − r|` over the enumerated orbit.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::QuadSurd;
use crate::numeric::simpson;
use crate::orbit::{GroupSpec, OrbitError, OrbitScanner, DEFAULT_A_BUDGET};

/// Identifier of the generator used for target sampling.
pub const RNG_NAME: &str = "ChaCha8Rng (rand_chacha 0.3), seed_from_u64";

#[derive(Debug, Error)]
pub enum KhintchineError {
    #[error("function is not positive at {0}: {1}")]
    NonPositive(f64, f64),
    #[error("empty or invalid range [{0}, {1}]")]
    BadRange(f64, f64),
    #[error("cannot parse approximation function {0:?}")]
    BadPhi(String),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

/// A positive approximation function with a printable descriptor.
#[derive(Clone)]
pub struct Phi {
    pub descriptor: String,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl Phi {
    pub fn new(descriptor: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Phi { descriptor: descriptor.into(), f: Arc::new(f) }
    }

    pub fn constant(c: f64) -> Self {
        Phi::new(format!("{c}"), move |_| c)
    }

    /// `t ↦ tᵃ`.
    pub fn power(a: f64) -> Self {
        Phi::new(format!("t^{a}"), move |t: f64| t.powf(a))
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }
}

impl fmt::Debug for Phi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phi({})", self.descriptor)
    }
}

/// Accepts a positive constant (`1`, `0.5`) or a power `t^a`.
impl FromStr for Phi {
    type Err = KhintchineError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("t^") {
            let a: f64 = rest.trim_matches(|c| c == '(' || c == ')').parse().map_err(|_| KhintchineError::BadPhi(s.into()))?;
            return Ok(Phi::power(a));
        }
        if s == "t" {
            return Ok(Phi::power(1.0));
        }
        match s.parse::<f64>() {
            Ok(c) if c > 0.0 => Ok(Phi::constant(c)),
            _ => Err(KhintchineError::BadPhi(s.into())),
        }
    }
}

// ---------------------------------------------------------------------------
// slowly varying maps

#[derive(Clone, Copy, Debug)]
pub struct VariationCaps {
    /// Largest acceptable multiplicative constant `A`.
    pub a_cap: f64,
    /// Shift `B` at which `A` is measured.
    pub b: f64,
}

impl Default for VariationCaps {
    fn default() -> Self {
        VariationCaps { a_cap: 1e3, b: 1.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SlowVariation {
    pub ok: bool,
    pub a: f64,
    pub b: f64,
}

/// Empirical constant `A ≥ 1` with `f(y) ≤ A f(x)` whenever `|x − y| ≤ B`,
/// from `samples` grid points of `range`; `ok` iff `A` is within the cap.
pub fn slowly_varying_check<F: Fn(f64) -> f64>(f: F, range: (f64, f64), samples: usize, caps: VariationCaps) -> Result<SlowVariation, KhintchineError> {
    let log_f = |x: f64| {
        let v = f(x);
        if v > 0.0 && v.is_finite() {
            Ok(v.ln())
        } else {
            Err(KhintchineError::NonPositive(x, v))
        }
    };
    variation_from_logs(range, samples, caps, log_f)
}

/// Same as [`slowly_varying_check`] for a function given by its logarithm,
/// for maps that underflow in floating point.
pub fn slowly_varying_check_log<F: Fn(f64) -> f64>(log_f: F, range: (f64, f64), samples: usize, caps: VariationCaps) -> Result<SlowVariation, KhintchineError> {
    variation_from_logs(range, samples, caps, |x| Ok(log_f(x)))
}

fn variation_from_logs<F: Fn(f64) -> Result<f64, KhintchineError>>(range: (f64, f64), samples: usize, caps: VariationCaps, log_f: F) -> Result<SlowVariation, KhintchineError> {
    let (lo, hi) = range;
    if !(lo < hi) || samples < 2 || !(caps.b > 0.0) {
        return Err(KhintchineError::BadRange(lo, hi));
    }
    let step = (hi - lo) / (samples - 1) as f64;
    let logs: Vec<f64> = (0..samples).map(|i| log_f(lo + step * i as f64)).collect::<Result<_, _>>()?;
    let w = ((caps.b / step + 1e-9).floor() as usize).max(1);
    let mut worst = 0.0f64;
    for i in 0..logs.len() {
        for j in i + 1..=(i + w).min(logs.len() - 1) {
            worst = worst.max((logs[j] - logs[i]).abs());
        }
    }
    let a = worst.exp().max(1.0);
    Ok(SlowVariation { ok: a <= caps.a_cap, a, b: caps.b })
}

// ---------------------------------------------------------------------------
// integral test

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Diverges,
    Converges,
    Inconclusive,
}

#[derive(Clone, Copy, Debug)]
pub struct IntegralBounds {
    /// Integrate over `log t ∈ [0, u_max]`, in dyadic blocks `[2ᵏ, 2ᵏ⁺¹]`.
    pub u_max: f64,
    pub tol: f64,
}

impl Default for IntegralBounds {
    fn default() -> Self {
        IntegralBounds { u_max: 512.0, tol: 1e-10 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegralReport {
    pub verdict: Verdict,
    /// Partial integrals up to `log t = 1, 2, 4, …, u_max`.
    pub partial: Vec<(f64, f64)>,
    /// Ratio of the last two dyadic block integrals; `≥ 1` for divergence.
    pub block_ratio: f64,
    /// Distance of `block_ratio` from the decision band.
    pub margin: f64,
    pub slowly_varying: bool,
}

/// Classifies `∫₁^∞ φ(t)^δ dt/t = ∫₀^∞ φ(eᵘ)^δ du`.
///
/// On a dyadic block `[2ᵏ, 2ᵏ⁺¹]` in `u`, a density `uᵖ` contributes
/// `∝ 2^{k(p+1)}`, so the ratio `r` of successive blocks is `≈ 2^{p+1}`:
/// `r ≥ 1` (up to `1e−3`) is read as divergence, `r ≤ 0.95` as convergence,
/// each holding on all of the last three blocks; anything else (ratios
/// inside the band, or straddling it) is inconclusive.
pub fn integral_test<F: Fn(f64) -> f64>(phi: F, delta: f64, bounds: IntegralBounds) -> Result<IntegralReport, KhintchineError> {
    if !(bounds.u_max >= 4.0) {
        return Err(KhintchineError::BadRange(0.0, bounds.u_max));
    }
    let g = |u: f64| phi(u.exp()).powf(delta);
    let sv = slowly_varying_check(|u| g(u), (0.0, bounds.u_max.min(64.0)), 513, VariationCaps::default())?;
    let mut edges = vec![0.0, 1.0];
    while edges.last().copied().unwrap() * 2.0 <= bounds.u_max {
        let e = edges.last().copied().unwrap() * 2.0;
        edges.push(e);
    }
    let mut blocks = Vec::new();
    let mut partial = Vec::new();
    let mut total = 0.0;
    for w in edges.windows(2) {
        let v = simpson(&g, w[0], w[1], bounds.tol * (1.0 + total));
        if !(v >= 0.0) {
            return Err(KhintchineError::NonPositive(w[0].exp(), v));
        }
        blocks.push(v);
        total += v;
        partial.push((w[1], total));
    }
    let ratios: Vec<f64> = blocks.windows(2).skip(1).map(|w| if w[0] > 0.0 { w[1] / w[0] } else { 0.0 }).collect();
    let r = *ratios.last().unwrap_or(&0.0);
    let tail = &ratios[ratios.len().saturating_sub(3)..];
    let (verdict, margin) = if total.is_infinite() || (!tail.is_empty() && tail.iter().all(|&x| x >= 1.0 - 1e-3)) {
        (Verdict::Diverges, tail.iter().fold(f64::INFINITY, |m, &x| m.min(x)) - (1.0 - 1e-3))
    } else if tail.iter().all(|&x| x <= 0.95) {
        (Verdict::Converges, 0.95 - tail.iter().fold(0.0f64, |m, &x| m.max(x)))
    } else {
        (Verdict::Inconclusive, 0.0)
    };
    Ok(IntegralReport { verdict, partial, block_ratio: r, margin, slowly_varying: sv.ok })
}

/// The form `∫₀¹ ψ(t)/t² dt`, through `φ(t) = t·ψ(2/t)`.
pub fn integral_test_psi<F: Fn(f64) -> f64>(psi: F, delta: f64, bounds: IntegralBounds) -> Result<IntegralReport, KhintchineError> {
    integral_test(|t| t * psi(2.0 / t), delta, bounds)
}

// ---------------------------------------------------------------------------
// Monte-Carlo experiment

#[derive(Clone, Debug, Serialize)]
pub struct KhintchineReport {
    pub phi: String,
    pub delta: f64,
    pub h_max: f64,
    pub seed: u64,
    pub rng: String,
    pub n_points: usize,
    pub window: (f64, f64),
    /// Empirical CDF of `m` at fixed thresholds.
    pub cdf: Vec<(f64, f64)>,
    pub median_m: Option<f64>,
    /// Median of the tail statistic `min` over `h ∈ [h_max/10, h_max]`.
    pub median_tail_m: Option<f64>,
    /// Per-target `(x, m, tail_m)` in sampling order.
    pub samples: Vec<(f64, f64, f64)>,
    pub note: String,
}

impl KhintchineReport {
    pub fn fraction_below(&self, threshold: f64) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        self.samples.iter().filter(|s| s.1 < threshold).count() as f64 / self.samples.len() as f64
    }
}

pub const CDF_THRESHOLDS: [f64; 7] = [0.01, 0.03, 0.1, 0.3, 1.0, 3.0, 10.0];

fn median(mut v: Vec<f64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) })
}

/// Samples `n_points` targets uniformly in `[0, 1)` and records, for each,
/// `m(x) = min (h/φ(h)^δ)·|x − r|` over orbit points with `h(r) ≤ h_max`
/// in `[−1, 2]`, together with the same minimum restricted to
/// `h ∈ [h_max/10, h_max]`.  Targets are drawn sequentially from one
/// generator, so the report depends only on the seed.
pub fn monte_carlo_liminf(alpha0: &QuadSurd, group: &GroupSpec, phi: &Phi, delta: f64, n_points: usize, h_max: f64, seed: u64) -> Result<KhintchineReport, KhintchineError> {
    let window = (0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs: Vec<f64> = (0..n_points).map(|_| rng.gen_range(window.0..window.1)).collect();
    let h_tail = h_max / 10.0;
    // (value, weight, h) sorted by value
    let orbit: Vec<(f64, f64, f64)> = if n_points == 0 {
        Vec::new()
    } else {
        let sc = OrbitScanner::new(alpha0, group.clone())?.with_budget(DEFAULT_A_BUDGET);
        let mut pts: Vec<(f64, f64, f64)> = sc
            .scan_window(0.0, h_max, window.0 - 1.0, window.1 + 1.0)?
            .iter()
            .map(|r| (r.value, r.h / phi.eval(r.h).powf(delta), r.h))
            .collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        pts
    };
    let tail: Vec<(f64, f64, f64)> = orbit.iter().copied().filter(|p| p.2 >= h_tail).collect();
    let min_over = |pts: &[(f64, f64, f64)], x: f64| pts.iter().fold(f64::INFINITY, |m, &(r, w, _)| m.min(w * (x - r).abs()));
    let samples: Vec<(f64, f64, f64)> = xs.par_iter().map(|&x| (x, min_over(&orbit, x), min_over(&tail, x))).collect();
    let n = samples.len().max(1) as f64;
    let cdf = CDF_THRESHOLDS.iter().map(|&t| (t, samples.iter().filter(|s| s.1 < t).count() as f64 / n)).collect();
    Ok(KhintchineReport {
        phi: phi.descriptor.clone(),
        delta,
        h_max,
        seed,
        rng: RNG_NAME.into(),
        n_points,
        window,
        cdf,
        median_m: median(samples.iter().map(|s| s.1).collect()),
        median_tail_m: median(samples.iter().map(|s| s.2).collect()),
        samples,
        note: "CDF thresholds and the tail range [h_max/10, h_max] are engineering choices; the 0-infinity law gives no rate".into(),
    })
}
