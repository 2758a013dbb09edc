//! Approximation constants, periodic spectrum values and Hurwitz-type bounds.
//!
//! For a target `x` and the orbit `E` of a base point, the approximation
//! constant is `c(x) = liminf h(r)·|x − r|` as `r ∈ E` runs to infinite
//! complexity.  Finite budgets only give upper envelopes, reported as the
//! tail infima over `h(r) ∈ [T, h_max]` for a grid of thresholds `T`.
//!
//! At a hyperbolic fixed point `ξ` the liminf becomes a minimum over the
//! orbit axes modulo the automorph `g` of `ξ`:
//!
//! ```text
//! c(ξ) = min (cosh ℓ − |cos θ|)
//! ```
//!
//! with `(ℓ, θ)` the complex distance between the axis of `g` and an orbit
//! axis.  Since the term is at least `cosh ℓ − 1`, only axes within
//! `R = argcosh(1 + current_min)` of the axis of `g` can lower it, which
//! turns the minimum into a finite, certified search.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{ExactError, MoebiusMap, QuadSurd, DEFAULT_PELL_BITS};
use crate::orbit::{enumerate_hyperbolic_points, gcd3, isqrt_i128, GroupSpec, HypBudget, IForm, OrbitError, OrbitScanner};

/// Slack added on the safe side of every certification comparison.
pub const CERT_SLACK: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum SpectrumError {
    #[error("target is rational; the constant is undefined at parabolic points")]
    RationalTarget,
    #[error("target lies in the orbit of the base point")]
    InOrbit,
    #[error("target is not finite")]
    NonFinite,
    #[error("threshold grid must be a nonempty increasing list in (0, h_max]")]
    BadGrid,
    #[error("unsupported catalog case: {0}")]
    UnsupportedCase(String),
    #[error("continued-fraction pattern must be nonempty, positive, and not all ones")]
    BadPattern,
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Finite-budget envelope of the approximation constant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxEstimate {
    pub thresholds: Vec<f64>,
    /// `inf{ h(r)|x−r| : T ≤ h(r) ≤ h_max }` per threshold (`inf` if empty).
    pub tail_infima: Vec<f64>,
    pub h_max: f64,
}

impl ApproxEstimate {
    /// The value at the largest threshold: the reported estimate of `c(x)`.
    pub fn value(&self) -> f64 {
        *self.tail_infima.last().unwrap_or(&f64::INFINITY)
    }
}

/// Thresholds `1, 10, 100, …` up to `h_max/10` (at least `[1]`).
pub fn default_grid(h_max: f64) -> Vec<f64> {
    let mut g = vec![1.0];
    let mut t = 10.0;
    while t <= h_max / 10.0 * (1.0 + 1e-12) {
        g.push(t);
        t *= 10.0;
    }
    g
}

/// Target of an estimate: a float or an exact quadratic surd.
#[derive(Clone, Debug)]
pub enum Target {
    Real(f64),
    Exact(QuadSurd),
}

impl From<f64> for Target {
    fn from(x: f64) -> Self {
        Target::Real(x)
    }
}

impl From<QuadSurd> for Target {
    fn from(x: QuadSurd) -> Self {
        Target::Exact(x)
    }
}

/// Envelope of `h(r)|x − r|` over the orbit of `α₀` under `Γ`.
pub fn approx_constant_estimate(
    x: impl Into<Target>,
    alpha0: &QuadSurd,
    group: &GroupSpec,
    h_grid: &[f64],
    h_max: f64,
) -> Result<ApproxEstimate, SpectrumError> {
    let sc = OrbitScanner::new(alpha0, group.clone())?;
    estimate_with(&sc, x.into(), h_grid, h_max)
}

/// As [`approx_constant_estimate`] with a prepared scanner.
pub fn estimate_with(sc: &OrbitScanner, x: Target, h_grid: &[f64], h_max: f64) -> Result<ApproxEstimate, SpectrumError> {
    let xf = match &x {
        Target::Real(v) => *v,
        Target::Exact(q) => {
            if !q.is_irrational() {
                return Err(SpectrumError::RationalTarget);
            }
            if sc.contains(q)? {
                return Err(SpectrumError::InOrbit);
            }
            q.to_f64()
        }
    };
    if !xf.is_finite() {
        return Err(SpectrumError::NonFinite);
    }
    if h_grid.is_empty() || h_grid.windows(2).any(|w| w[0] >= w[1]) || h_grid[0] <= 0.0 || *h_grid.last().unwrap() > h_max {
        return Err(SpectrumError::BadGrid);
    }
    let sd = sc.sqrt_disc();
    let a_min = ((h_grid[0] * sd / 2.0).ceil() as i128).max(1);
    let a_max = sc.a_max(h_max)?;
    // Any r with h|x−r| < B lies in |x − r| < B/h; B grows until every
    // tail infimum is below it (or the cap is hit).
    let mut bound = 8.0f64;
    loop {
        let elems = sc.scan_with(a_min, a_max, |a| {
            let h = 2.0 * a as f64 / sd;
            let w = bound / h;
            (xf - w, xf + w)
        })?;
        let mut tails = vec![f64::INFINITY; h_grid.len()];
        for e in &elems {
            let v = e.h * (xf - e.value).abs();
            for (k, t) in h_grid.iter().enumerate() {
                if e.h >= *t && v < tails[k] {
                    tails[k] = v;
                }
            }
        }
        if tails.iter().all(|&t| t < bound) || bound >= 256.0 {
            return Ok(ApproxEstimate { thresholds: h_grid.to_vec(), tail_infima: tails, h_max });
        }
        bound *= 4.0;
    }
}

/// Exact spectrum value at a periodic point.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumSample {
    pub xi: QuadSurd,
    pub c_value: f64,
    pub certified: bool,
    /// Axis-distance threshold up to which all orbit axes were examined.
    pub cert_radius: f64,
}

/// Serialised form of a [`SpectrumSample`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub xi: String,
    pub disc: i64,
    pub c: f64,
    pub certified: bool,
    pub radius: f64,
}

impl SpectrumSample {
    pub fn disc(&self) -> BigInt {
        self.xi.form().map(|f| f.disc()).unwrap_or_else(|_| BigInt::zero())
    }

    pub fn record(&self) -> SampleRecord {
        SampleRecord {
            xi: self.xi.to_text(),
            disc: self.disc().to_i64().unwrap_or(i64::MAX),
            c: self.c_value,
            certified: self.certified,
            radius: self.cert_radius,
        }
    }
}

/// `cosh ℓ − |cos θ|` for two geodesics with real endpoints `(u1, u2)` and
/// `(v1, v2)`: after sending `u1 ↦ 0`, `u2 ↦ ∞`, the second geodesic runs
/// from `p` to `q` and `cosh ℓ ∓ cos θ = 2|p|/|q−p|, 2|q|/|q−p|`.
pub fn axis_term(u1: f64, u2: f64, v1: f64, v2: f64) -> f64 {
    let p = (v1 - u1) / (v1 - u2);
    let q = (v2 - u1) / (v2 - u2);
    2.0 * p.abs().min(q.abs()) / (q - p).abs()
}

/// Largest radius tried before giving up on certification.
pub const MAX_CERT_RADIUS: f64 = 8.0;

/// Certified `c(ξ)` for a hyperbolic fixed point `ξ`.
pub fn approx_constant_periodic(xi: &QuadSurd, alpha0: &QuadSurd, group: &GroupSpec) -> Result<SpectrumSample, SpectrumError> {
    let sc = OrbitScanner::new(alpha0, group.clone())?;
    periodic_with(&sc, xi)
}

/// A translate of the axis of `ξ` meeting `{|Re z| ≤ ½, Im z ≥ √3/2}`.
struct Translate {
    u1: f64,
    u2: f64,
    radius: f64,
    /// For finite-index groups: maps `W` with `W(axis ξ) = this translate`,
    /// one per residue of the automorph power.
    transports: Vec<MoebiusMap>,
}

fn translates(xi: &QuadSurd, sc: &OrbitScanner) -> Result<Vec<Translate>, SpectrumError> {
    let f = xi.form()?;
    let d = f.disc().to_i128().ok_or(OrbitError::Overflow)?;
    let s = isqrt_i128(d);
    let sd = (d as f64).sqrt();
    let mut classes = std::collections::HashSet::new();
    for g in [f.clone(), f.neg()] {
        for h in g.cycle().forms {
            classes.insert(IForm::from_big(&h).ok_or(OrbitError::Overflow)?);
        }
    }
    let finite = matches!(sc.group, GroupSpec::FiniteIndex { .. });
    let g0 = if finite { Some(crate::exactnum::automorph_of_form(&f, DEFAULT_PELL_BITS)?) } else { None };
    let stab = match &sc.group {
        GroupSpec::FiniteIndex { stab_range, .. } => *stab_range,
        _ => 0,
    };
    let a_top = (sd / 3f64.sqrt()).floor() as i128 + 1;
    let mut out = Vec::new();
    for a in 1..=a_top {
        let b_top = a + s + 2;
        let mut b = -b_top;
        if b.rem_euclid(2) != d.rem_euclid(2) {
            b += 1;
        }
        while b <= b_top {
            let num = b * b - d;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                let cand = IForm { a, b, c };
                if gcd3(a, b, c) == 1 {
                    let center = -(b as f64) / (2.0 * a as f64);
                    let radius = sd / (2.0 * a as f64);
                    // highest point of the semicircle over |x| ≤ ½
                    let x = center.clamp(-0.5, 0.5);
                    let top2 = radius * radius - (x - center) * (x - center);
                    if top2 >= 0.75 - 1e-9 && classes.contains(&cand.reduce(d, s).ok_or(OrbitError::Overflow)?) {
                        let mut transports = Vec::new();
                        if let Some(g0) = &g0 {
                            let bf = cand.to_big();
                            let w = f.equivalence_witness(&bf).or_else(|| f.neg().equivalence_witness(&bf));
                            if let Some(w) = w {
                                for j in 0..=stab {
                                    transports.push(w.compose(&g0.pow(j)));
                                }
                            }
                        }
                        out.push(Translate { u1: center + radius, u2: center - radius, radius, transports });
                    }
                }
            }
            b += 2;
        }
    }
    Ok(out)
}

/// As [`approx_constant_periodic`] with a prepared scanner.
pub fn periodic_with(sc: &OrbitScanner, xi: &QuadSurd) -> Result<SpectrumSample, SpectrumError> {
    if !xi.is_irrational() || !xi.is_real() {
        return Err(SpectrumError::RationalTarget);
    }
    if sc.contains(xi)? {
        return Err(SpectrumError::InOrbit);
    }
    let pieces = translates(xi, sc)?;
    let d0 = sc.disc();
    let sd0 = sc.sqrt_disc();
    let mut best = f64::INFINITY;
    let mut r = 2f64.acosh();
    loop {
        let (sh, er) = (r.sinh(), r.exp());
        for p in &pieces {
            // orbit axes meeting the R-neighbourhood of the arc of p in the strip
            let a_top = (sd0 * er / 3f64.sqrt()).floor() as i128 + 1;
            let u = 0.5 + p.radius * sh;
            for a in 1..=a_top {
                let b_top = (2.0 * a as f64 * u + sd0).ceil() as i128 + 1;
                let mut b = -b_top;
                if b.rem_euclid(2) != d0.rem_euclid(2) {
                    b += 1;
                }
                while b <= b_top {
                    let num = b * b - d0;
                    if num % (4 * a) == 0 {
                        let c = num / (4 * a);
                        if gcd3(a, b, c) == 1 {
                            let rad = sd0 / (2.0 * a as f64);
                            let cen = -(b as f64) / (2.0 * a as f64);
                            let v = axis_term(p.u1, p.u2, cen + rad, cen - rad);
                            if v < best && accepted(sc, p, IForm { a, b, c })? {
                                best = v;
                            }
                        }
                    }
                    b += 2;
                }
            }
        }
        if best + CERT_SLACK < r.cosh() - 1.0 {
            return Ok(SpectrumSample { xi: xi.clone(), c_value: best, certified: true, cert_radius: r });
        }
        let next = if best.is_finite() { (1.0 + best).acosh() + 0.25 } else { r + 1.0 };
        r = next.max(r + 0.25);
        if r > MAX_CERT_RADIUS {
            return Ok(SpectrumSample { xi: xi.clone(), c_value: best, certified: false, cert_radius: r });
        }
    }
}

fn accepted(sc: &OrbitScanner, p: &Translate, f: IForm) -> Result<bool, SpectrumError> {
    match &sc.group {
        GroupSpec::FiniteIndex { .. } => {
            let r = f.to_big().first_root();
            for w in &p.transports {
                let back = w.inverse().apply_surd(&r)?;
                if sc.contains(&back)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        _ => Ok(sc.accepts(f)?),
    }
}

/// Certified values at the hyperbolic points of the budget, ordered by
/// `(discriminant, value)`.  Points in the orbit are skipped.
pub fn spectrum_sample(alpha0: &QuadSurd, group: &GroupSpec, budget: &HypBudget) -> Result<Vec<SpectrumSample>, SpectrumError> {
    let sc = OrbitScanner::new(alpha0, group.clone())?;
    let pts = enumerate_hyperbolic_points(&sc, budget)?;
    let mut out: Vec<SpectrumSample> = pts
        .par_iter()
        .map(|x| periodic_with(&sc, x))
        .collect::<Result<Vec<_>, _>>()?;
    out.sort_by(|x, y| x.disc().cmp(&y.disc()).then(x.c_value.total_cmp(&y.c_value)));
    out.dedup_by(|x, y| x.xi == y.xi);
    Ok(out)
}

/// The attracting fixed point `(n + √(n²+4))/2` of `γₙ = (n²+1, n; n, 1)`.
pub fn gamma_n_fixed_point(n: i64) -> Result<QuadSurd, ExactError> {
    QuadSurd::from_ints(n, 1, n * n + 4, 2)
}

/// `[0; (pattern)^∞]` as an exact quadratic irrational.
pub fn periodic_continued_fraction(pattern: &[u32]) -> Result<QuadSurd, SpectrumError> {
    if pattern.is_empty() || pattern.iter().any(|&d| d == 0) {
        return Err(SpectrumError::BadPattern);
    }
    // y = [p1; p2, …, pk, y] = M·y with M = Π (p_i, 1; 1, 0)
    let (mut p, mut q, mut r, mut s) = (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
    for &d in pattern {
        let d = BigInt::from(d);
        let (np, nq) = (&p * &d + &q, p.clone());
        let (nr, ns) = (&r * &d + &s, r.clone());
        p = np;
        q = nq;
        r = nr;
        s = ns;
    }
    // r y² + (s − p) y − q = 0, y > 1
    let pm = &p - &s;
    let disc = &pm * &pm + BigInt::from(4) * &q * &r;
    let y = QuadSurd::from_big(&pm, &BigInt::one(), &disc, &(BigInt::from(2) * &r))?;
    Ok(y.inv()?)
}

/// A continued fraction built from a repeated block, with its estimate.
#[derive(Clone, Debug)]
pub struct Liouville {
    pub xi: QuadSurd,
    pub value: f64,
    pub estimate: ApproxEstimate,
}

/// `[0; (pattern)^∞]` with its golden approximation envelope.
///
/// `repetitions` sets the budget: `h_max` is the squared denominator of the
/// convergent after that many periods, clamped to `[10², 8·10⁵]` (within the default `|a|` budget for the golden orbit).
pub fn liouville_construct(pattern: &[u32], repetitions: usize) -> Result<Liouville, SpectrumError> {
    if pattern.iter().all(|&d| d == 1) {
        return Err(SpectrumError::BadPattern);
    }
    let xi = periodic_continued_fraction(pattern)?;
    let (mut q0, mut q1) = (BigInt::one(), BigInt::zero());
    for _ in 0..repetitions.max(1) {
        for &d in pattern {
            let q2 = BigInt::from(d) * &q0 + &q1;
            q1 = q0;
            q0 = q2;
        }
    }
    let h_max = q0.to_f64().unwrap_or(f64::MAX).powi(2).clamp(1e2, 8e5);
    let estimate = approx_constant_estimate(xi.clone(), &QuadSurd::golden(), &GroupSpec::Psl2z, &default_grid(h_max), h_max)?;
    Ok(Liouville { value: xi.to_f64(), xi, estimate })
}

/// Groups with a closed-form bound on the Hurwitz constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HurwitzCase {
    Psl2z,
    ModularTorus,
    Bianchi(u32),
    HurwitzH5,
    EisensteinPicard,
}

impl std::str::FromStr for HurwitzCase {
    type Err = SpectrumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "psl2z" => Ok(HurwitzCase::Psl2z),
            "modular_torus" => Ok(HurwitzCase::ModularTorus),
            "hurwitz_h5" => Ok(HurwitzCase::HurwitzH5),
            "eisenstein_picard" => Ok(HurwitzCase::EisensteinPicard),
            _ => {
                let m = t
                    .strip_prefix("bianchi(")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| t.strip_prefix("bianchi"))
                    .and_then(|r| r.parse::<u32>().ok())
                    .ok_or_else(|| SpectrumError::UnsupportedCase(s.to_string()))?;
                Ok(HurwitzCase::Bianchi(m))
            }
        }
    }
}

/// Upper bound `(1+√2)e^Δ` on the Hurwitz constant, `Δ` the cusp-to-domain
/// diameter of the group in question.
pub fn hurwitz_bounds_catalog(case: HurwitzCase) -> Result<f64, SpectrumError> {
    let k = 1.0 + 2f64.sqrt();
    Ok(match case {
        // Δ = ½ log 3
        HurwitzCase::Psl2z => k * 3f64.sqrt(),
        // Δ = ½ log 3 + argcosh(3/2)
        HurwitzCase::ModularTorus => k * 3f64.sqrt() * (1.5 + 1.25f64.sqrt()),
        HurwitzCase::Bianchi(1) => k * k,
        HurwitzCase::Bianchi(2) => k * (2.0 + 3f64.sqrt()),
        HurwitzCase::Bianchi(m @ (3 | 7 | 11)) => {
            let m = m as f64;
            k * (4.0 * m.sqrt() + m + 1.0) / (14.0 * m - m * m - 1.0).sqrt()
        }
        HurwitzCase::HurwitzH5 | HurwitzCase::EisensteinPicard => k * k * k,
        HurwitzCase::Bianchi(m) => return Err(SpectrumError::UnsupportedCase(format!("bianchi({m})"))),
    })
}

/// All supported catalog cases, in display order.
pub fn catalog_cases() -> Vec<(&'static str, HurwitzCase)> {
    vec![
        ("psl2z", HurwitzCase::Psl2z),
        ("bianchi(1)", HurwitzCase::Bianchi(1)),
        ("bianchi(2)", HurwitzCase::Bianchi(2)),
        ("bianchi(3)", HurwitzCase::Bianchi(3)),
        ("bianchi(7)", HurwitzCase::Bianchi(7)),
        ("bianchi(11)", HurwitzCase::Bianchi(11)),
        ("modular_torus", HurwitzCase::ModularTorus),
        ("hurwitz_h5", HurwitzCase::HurwitzH5),
        ("eisenstein_picard", HurwitzCase::EisensteinPicard),
    ]
}

/// `⌈v·10^digits⌉ / 10^digits`.
pub fn round_up(v: f64, digits: u32) -> f64 {
    let s = 10f64.powi(digits as i32);
    (v * s).ceil() / s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hgeom::{complex_distance, Geodesic};

    #[test]
    fn axis_term_matches_complex_distance() {
        for (u1, u2, v1, v2) in [(1.0, -2.0, 0.3, 5.0), (0.0, 3.0, -1.0, 1.0), (2.0, 7.0, 3.0, 4.0)] {
            let cd = complex_distance(&Geodesic::real(u2, u1).unwrap(), &Geodesic::real(v2, v1).unwrap());
            let want = cd.ell.cosh() - cd.theta.cos().abs();
            assert!((axis_term(u1, u2, v1, v2) - want).abs() < 1e-12, "{u1} {u2} {v1} {v2}");
        }
    }

    #[test]
    fn perpendicular_axes_give_one() {
        // the unit semicircle and the imaginary axis meet at a right angle
        assert!((axis_term(1.0, -1.0, 0.0, 1e300) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gamma_n_values() {
        let vals: Vec<f64> = (2..=8)
            .map(|n| {
                let xi = gamma_n_fixed_point(n).unwrap();
                let s = approx_constant_periodic(&xi, &QuadSurd::golden(), &GroupSpec::Psl2z).unwrap();
                assert!(s.certified);
                s.c_value
            })
            .collect();
        // closed forms at n = 2 (crossing axes at Γ·i) and n = 4
        assert!((vals[0] - (1.0 - 3.0 / 10f64.sqrt())).abs() < 1e-12);
        assert!((vals[2] - 0.2).abs() < 1e-12);
        assert!(vals.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn golden_point_is_rejected() {
        let r = approx_constant_periodic(&QuadSurd::golden(), &QuadSurd::golden(), &GroupSpec::Psl2z);
        assert!(matches!(r, Err(SpectrumError::InOrbit)));
        let r = approx_constant_estimate(QuadSurd::from_ints(5, 1, 5, 10).unwrap(), &QuadSurd::golden(), &GroupSpec::Psl2z, &[1.0], 10.0);
        assert!(matches!(r, Err(SpectrumError::InOrbit)));
    }

    #[test]
    fn estimate_sqrt2() {
        let e = approx_constant_estimate(QuadSurd::sqrt_int(2).unwrap(), &QuadSurd::golden(), &GroupSpec::Psl2z, &default_grid(1e4), 1e4).unwrap();
        assert!(e.value() > 0.0 && e.value() <= 1.0 - 1.0 / 5f64.sqrt() + 0.01, "{}", e.value());
        assert!(e.tail_infima.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rational_target_rejected() {
        let r = approx_constant_estimate(QuadSurd::from_ints(1, 0, 1, 3).unwrap(), &QuadSurd::golden(), &GroupSpec::Psl2z, &[1.0], 10.0);
        assert!(matches!(r, Err(SpectrumError::RationalTarget)));
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(periodic_continued_fraction(&[2]).unwrap(), QuadSurd::from_ints(-1, 1, 2, 1).unwrap());
        assert_eq!(periodic_continued_fraction(&[1]).unwrap(), QuadSurd::from_ints(-1, 1, 5, 2).unwrap());
        assert!(liouville_construct(&[1, 1, 1], 3).is_err());
    }

    #[test]
    fn catalog() {
        assert!((hurwitz_bounds_catalog(HurwitzCase::Psl2z).unwrap() - 4.18154055).abs() < 1e-7);
        assert!((hurwitz_bounds_catalog(HurwitzCase::Bianchi(3)).unwrap() - 4.663902).abs() < 1e-5);
        assert!(hurwitz_bounds_catalog(HurwitzCase::Bianchi(5)).is_err());
        assert_eq!("bianchi(7)".parse::<HurwitzCase>().unwrap(), HurwitzCase::Bianchi(7));
        assert!("torus".parse::<HurwitzCase>().is_err());
        assert_eq!(round_up(4.1815, 2), 4.19);
    }
}
