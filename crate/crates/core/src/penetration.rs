//! Penetration of geodesic rays into neighbourhoods of orbit axes.
//!
//! A ray `ρ` comes down from `∞` to a target `x`, parametrised so that
//! `ρ(t)` has height `e^{−t}`.  Each time it enters the `ε`-neighbourhood of
//! an axis of the family with gauge value above `δ + κ`, an event is
//! recorded.  The family is generated locally along the ray: with
//! `p_k/q_k` the convergents of `x`, the matrix `M_k = (p_k, p_{k−1}; q_k,
//! q_{k−1})` carries the stretch of `ρ` at heights `(1/q_{k+1}², 1/q_k²]`
//! to heights `≥ ½`, where only finitely many axes come within `ε`.
//! Every quantity is then computed in these well-conditioned coordinates.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{BQForm, BaseScalar, ExactError, MoebiusMap, QuadSurd};
use crate::hgeom::{c1_prime, dist, penetration_maps, BoundaryPoint, CMoebius, GeomError, Geodesic, HPoint};
use crate::numeric::{bisect, golden_min};
use crate::orbit::{gcd3, OrbitError, OrbitScanner};
use crate::spectrum::Target;

/// Largest supported `t_max`; beyond it the convergent box is not generated.
pub const MAX_T: f64 = 600.0;

#[derive(Debug, Error)]
pub enum PenetrationError {
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(f64),
    #[error("t_max = {0} exceeds the family-generation box (max {MAX_T})")]
    TimeBudget(f64),
    #[error("two axes enter at the same time {0}")]
    NonUnique(f64),
    #[error("target is not finite")]
    NonFinite,
    #[error("geodesics must have real endpoints")]
    NotPlanar,
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

/// Which penetration gauge defines the event value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Gauge {
    Length,
    Ftp,
    Cp,
}

impl Gauge {
    /// Uniform distance to the penetration length: `0`, `2c′₁+2ε`, and
    /// `2c′₁+2ε+4log(1+√2)`.
    pub fn default_kappa(self, eps: f64) -> f64 {
        match self {
            Gauge::Length => 0.0,
            Gauge::Ftp => ftp_bound(eps),
            Gauge::Cp => ftp_bound(eps) + cp_bound(),
        }
    }
}

impl std::str::FromStr for Gauge {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "length" | "ell" => Ok(Gauge::Length),
            "ftp" => Ok(Gauge::Ftp),
            "cp" => Ok(Gauge::Cp),
            _ => Err(format!("unknown gauge {s:?}")),
        }
    }
}

/// `2c′₁(ε) + 2ε`.
pub fn ftp_bound(eps: f64) -> f64 {
    2.0 * c1_prime(eps) + 2.0 * eps
}

/// `4 log(1+√2)`.
pub fn cp_bound() -> f64 {
    4.0 * (1.0 + 2f64.sqrt()).ln()
}

/// `2 log(2+√5)`.
pub fn golden_delta() -> f64 {
    2.0 * (2.0 + 5f64.sqrt()).ln()
}

#[derive(Clone, Debug)]
pub struct PenetrationConfig {
    pub eps: f64,
    pub delta: f64,
    pub kappa: f64,
    pub gauge: Gauge,
    pub t_max: f64,
}

impl PenetrationConfig {
    pub fn new(eps: f64, t_max: f64, gauge: Gauge) -> Self {
        PenetrationConfig { eps, delta: golden_delta(), kappa: gauge.default_kappa(eps), gauge, t_max }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PenetrationEvent {
    pub t_enter: f64,
    /// `+∞` for the terminal event.
    pub t_exit: f64,
    pub axis_form: BQForm,
    /// Gauge value; `+∞` when the ray ends on the axis.
    pub value: f64,
    pub terminal: bool,
}

/// Continued-fraction expansion of an exact or dyadic target.
enum Cf {
    Surd(QuadSurd),
    Rat(BigRational),
    Done,
}

impl Cf {
    fn floor_surd(x: &QuadSurd) -> Result<BigInt, ExactError> {
        let mut a = BigInt::from_f64(x.to_f64().floor()).unwrap_or_default();
        let int = |a: &BigInt| QuadSurd::from_scalar(BaseScalar::from_bigint(a.clone()));
        while x.cmp_real(&int(&a))? == std::cmp::Ordering::Less {
            a -= 1;
        }
        while x.cmp_real(&int(&(&a + 1)))? != std::cmp::Ordering::Less {
            a += 1;
        }
        Ok(a)
    }

    /// Current complete quotient as a float (`∞` once exhausted).
    fn value(&self) -> f64 {
        match self {
            Cf::Surd(x) => x.to_f64(),
            Cf::Rat(r) => crate::exactnum::ratio_to_f64(r),
            Cf::Done => f64::INFINITY,
        }
    }

    /// Pop the next partial quotient and advance to the next complete quotient.
    fn next(&mut self) -> Result<Option<BigInt>, ExactError> {
        let state = std::mem::replace(self, Cf::Done);
        match state {
            Cf::Done => Ok(None),
            Cf::Surd(x) => {
                let a = Self::floor_surd(&x)?;
                let frac = x.checked_sub(&QuadSurd::from_scalar(BaseScalar::from_bigint(a.clone())))?;
                *self = Cf::Surd(frac.inv()?);
                Ok(Some(a))
            }
            Cf::Rat(r) => {
                let a = r.floor().to_integer();
                let frac = &r - BigRational::from_integer(a.clone());
                if !frac.is_zero() {
                    *self = Cf::Rat(frac.recip());
                }
                Ok(Some(a))
            }
        }
    }
}

/// One convergent piece of the ray.
struct Piece {
    /// `M_k` entries as floats `(p_k, p_{k−1}, q_k, q_{k−1})`.
    m: [f64; 4],
    mat: MoebiusMap,
    /// Local endpoints of `ρ`: image of `∞` and of the target.
    u: f64,
    v: f64,
}

fn pieces(target: &Target, t_max: f64) -> Result<Vec<Piece>, PenetrationError> {
    let mut cf = match target {
        Target::Exact(x) => {
            if x.is_irrational() {
                Cf::Surd(x.clone())
            } else {
                Cf::Rat(x.as_scalar().map(|s| s.re.clone()).ok_or(ExactError::NotReal)?)
            }
        }
        Target::Real(v) => Cf::Rat(BigRational::from_f64(*v).ok_or(PenetrationError::NonFinite)?),
    };
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero()); // p_{k−1}, q_{k−1}
    let a0 = cf.next()?.expect("a real number has an integer part");
    let (mut p0, mut q0) = (a0, BigInt::one());
    let y_min = (-t_max).exp();
    let mut out = Vec::new();
    loop {
        let v = cf.value();
        let f = |b: &BigInt| b.to_f64().unwrap_or(f64::INFINITY);
        let u = -f(&q1) / f(&q0);
        let mat = MoebiusMap::from_big(p0.clone(), p1.clone(), q0.clone(), q1.clone())?;
        out.push(Piece { m: [f(&p0), f(&p1), f(&q0), f(&q1)], mat, u, v });
        let a = match cf.next()? {
            Some(a) => a,
            None => break,
        };
        let p2 = &a * &p0 + &p1;
        let q2 = &a * &q0 + &q1;
        p1 = std::mem::replace(&mut p0, p2);
        q1 = std::mem::replace(&mut q0, q2);
        // piece k+1 starts at height 1/q_{k+1}²
        let qf = q1.to_f64().unwrap_or(f64::INFINITY);
        if 1.0 / (qf * qf) < y_min {
            break;
        }
    }
    Ok(out)
}

/// Inverse of a determinant-one complex Möbius map.
fn cinv(m: &CMoebius) -> CMoebius {
    CMoebius { a: m.d, b: -m.b, c: -m.c, d: m.a }
}

/// Parameters `−1 ≤ s1 ≤ s2 ≤ 1` of `ρ ∩ N_ε(L)` along the semicircle of
/// the normalised `ρ` (from `p` at `s = −1` to `q` at `s = 1`).
fn cone_interval(p: Complex64, q: Complex64, eps: f64) -> Option<(f64, f64, Complex64, f64, Complex64)> {
    let c0 = (p + q) / 2.0;
    let r = (q - p).norm() / 2.0;
    let e = (q - p) / (2.0 * r);
    let sig = eps.sinh();
    let kappa = (c0 * e.conj()).re;
    let a = r * r * (1.0 + sig * sig);
    let b = 2.0 * r * kappa;
    let c = c0.norm_sqr() - sig * sig * r * r;
    let disc = b * b - 4.0 * a * c;
    if disc <= 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let qq = -0.5 * (b + b.signum() * sq);
    let (mut s1, mut s2) = if qq != 0.0 { (qq / a, c / qq) } else { (-sq / (2.0 * a), sq / (2.0 * a)) };
    if s1 > s2 {
        std::mem::swap(&mut s1, &mut s2);
    }
    let (s1, s2) = (s1.clamp(-1.0, 1.0), s2.clamp(-1.0, 1.0));
    if s1 >= s2 {
        return None;
    }
    Some((s1, s2, c0, r, e))
}

/// Global time of a local point.
fn global_time(piece: &Piece, w: &HPoint) -> f64 {
    let [_, _, c, d] = piece.m;
    let x = w.z.re;
    let den = (c * x + d).powi(2) + (c * w.h).powi(2);
    -(w.h / den).ln()
}

fn gauge_value(pen: &crate::hgeom::Penetration, g: Gauge) -> f64 {
    let v = match g {
        Gauge::Length => pen.ell,
        Gauge::Ftp => pen.ftp,
        Gauge::Cp => pen.cp,
    };
    v.finite().unwrap_or(f64::INFINITY)
}

/// Penetration sequence of the ray from `∞` to `target` into the axes of
/// the orbit handled by `family`.
pub fn penetration_sequence(target: &Target, family: &OrbitScanner, cfg: &PenetrationConfig) -> Result<Vec<PenetrationEvent>, PenetrationError> {
    if !(cfg.eps > 0.0) {
        return Err(PenetrationError::NonPositiveEpsilon(cfg.eps));
    }
    if !(cfg.t_max <= MAX_T) {
        return Err(PenetrationError::TimeBudget(cfg.t_max));
    }
    if let Target::Real(v) = target {
        if !v.is_finite() {
            return Err(PenetrationError::NonFinite);
        }
    }
    let threshold = cfg.delta + cfg.kappa;
    // terminal axis: the ray ends on an axis of the family
    let terminal = match target {
        Target::Exact(x) if x.is_irrational() && family.contains(x)? => {
            let f = x.form()?;
            let width = (x.to_f64() - x.galois_conjugate().to_f64()).abs();
            Some((f, -(width * cfg.eps.sinh()).ln()))
        }
        _ => None,
    };
    let sd0 = family.sqrt_disc();
    let d0 = family.disc();
    let sh = cfg.eps.sinh();
    let mut found: std::collections::BTreeMap<(BigInt, BigInt, BigInt), PenetrationEvent> = Default::default();
    for piece in pieces(target, cfg.t_max)? {
        let (u, v) = (piece.u, piece.v);
        // stretch of ρ at local height ≥ ½ and global time ≤ t_max
        let cap = sd0 / 2.0 * cfg.eps.exp();
        let (xlo, xhi, ymax) = if v.is_infinite() {
            let c = piece.m[2];
            (u, u, cap.min(cfg.t_max.exp() / (c * c)))
        } else {
            let m = 0.5 * (u + v);
            let rad = 0.5 * (v - u);
            if rad < 0.5 {
                continue;
            }
            let half = (rad * rad - 0.25).sqrt();
            let (lo, mut hi) = (m - half, m + half);
            let time = |x: f64| global_time(&piece, &HPoint::new(Complex64::new(x, 0.0), ((x - u) * (v - x)).max(0.0).sqrt()));
            if time(hi) > cfg.t_max {
                if time(lo) > cfg.t_max {
                    continue;
                }
                hi = bisect(|x| time(x) - cfg.t_max, lo, hi, 1e-12 * (1.0 + hi.abs())).unwrap_or(hi);
            }
            let ymax = if hi >= m { rad } else { ((hi - u) * (v - hi)).sqrt() };
            (lo, hi, ymax.min(cap))
        };
        let rho_local = if v.is_infinite() {
            Geodesic::new(BoundaryPoint::real(u), BoundaryPoint::Inf)?
        } else {
            Geodesic::real(u, v)?
        };
        let a_top = (sd0 * cfg.eps.exp()).floor() as i128 + 1;
        for a in 1..=a_top {
            let rad_a = sd0 / (2.0 * a as f64);
            let lo = xlo - ymax * sh - rad_a;
            let hi = xhi + ymax * sh + rad_a;
            // center −b/(2a) ∈ [lo, hi]
            let mut b = (-2.0 * a as f64 * hi).floor() as i128 - 1;
            let b_end = (-2.0 * a as f64 * lo).ceil() as i128 + 1;
            if b.rem_euclid(2) != d0.rem_euclid(2) {
                b += 1;
            }
            while b <= b_end {
                let num = b * b - d0;
                if num % (4 * a) == 0 && gcd3(a, b, num / (4 * a)) == 1 {
                    let c = num / (4 * a);
                    let cen = -(b as f64) / (2.0 * a as f64);
                    let l_local = Geodesic::real(cen - rad_a, cen + rad_a)?;
                    let norm = CMoebius::normalizing(&l_local);
                    let (pp, qq) = match (norm.apply(&rho_local.p_minus).coord(), norm.apply(&rho_local.p_plus).coord()) {
                        (Some(p), Some(q)) => (p, q),
                        _ => {
                            b += 2;
                            continue;
                        }
                    };
                    if let Some((s1, s2, c0, r, e)) = cone_interval(pp, qq, cfg.eps) {
                        let local = BQForm::from_i64(a as i64, b as i64, c as i64)?;
                        let global = local.act(&piece.mat)?;
                        let global = if global.a < BigInt::zero() { global.neg() } else { global };
                        let key = (global.a.clone(), global.b.clone(), global.c.clone());
                        let is_terminal = terminal.as_ref().map(|(f, _)| *f == global || f.neg() == global).unwrap_or(false);
                        if !is_terminal && !found.contains_key(&key) && family.contains(&global.first_root())? {
                            let inv = cinv(&norm);
                            let at = |s: f64| inv.apply_point(&HPoint::new(c0 + e * (r * s), r * (1.0 - s * s).max(0.0).sqrt()));
                            let t_enter = global_time(&piece, &at(s1));
                            let t_exit = if s2 >= 1.0 && v.is_infinite() { f64::INFINITY } else { global_time(&piece, &at(s2)) };
                            let pen = penetration_maps(&rho_local, &l_local, cfg.eps)?;
                            let value = gauge_value(&pen, cfg.gauge);
                            found.insert(key, PenetrationEvent { t_enter, t_exit, axis_form: global, value, terminal: false });
                        }
                    }
                }
                b += 2;
            }
        }
    }
    let mut events: Vec<PenetrationEvent> =
        found.into_values().filter(|e| e.value > threshold && e.t_enter >= 0.0 && e.t_enter <= cfg.t_max).collect();
    if let Some((f, t)) = terminal {
        let t = t.max(0.0);
        events.retain(|e| e.t_enter < t);
        if t <= cfg.t_max {
            events.push(PenetrationEvent { t_enter: t, t_exit: f64::INFINITY, axis_form: f, value: f64::INFINITY, terminal: true });
        }
    }
    events.sort_by(|x, y| x.t_enter.total_cmp(&y.t_enter));
    for w in events.windows(2) {
        if (w[1].t_enter - w[0].t_enter).abs() < 1e-12 {
            return Err(PenetrationError::NonUnique(w[0].t_enter));
        }
    }
    Ok(events)
}

/// `t_enter,t_exit,a,b,c,value` with a header line.
pub fn events_to_csv(events: &[PenetrationEvent]) -> String {
    let mut s = String::from("t_enter,t_exit,a,b,c,value\n");
    for e in events {
        s.push_str(&format!("{},{},{},{},{},{}\n", e.t_enter, e.t_exit, e.axis_form.a, e.axis_form.b, e.axis_form.c, e.value));
    }
    s
}

/// Maxima of `|ftp − ℓ|` and `|cp − ftp|` over random configurations.
#[derive(Clone, Debug, Serialize)]
pub struct InequalityReport {
    pub samples: usize,
    pub eps: f64,
    pub max_ftp_minus_ell: f64,
    pub max_cp_minus_ftp: f64,
    pub bound_ftp: f64,
    pub bound_cp: f64,
    pub violations: usize,
}

impl InequalityReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Random `(ρ, L)` with real endpoints in `[−5, 5]`; `ρ` starts at `∞`
/// half of the time.  Coincident or asymptotic pairs are redrawn.
pub fn check_penetration_inequalities(samples: usize, eps: f64, seed: u64) -> Result<InequalityReport, PenetrationError> {
    if !(eps > 0.0) {
        return Err(PenetrationError::NonPositiveEpsilon(eps));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (b1, b2) = (ftp_bound(eps), cp_bound());
    let mut rep = InequalityReport { samples: 0, eps, max_ftp_minus_ell: 0.0, max_cp_minus_ftp: 0.0, bound_ftp: b1, bound_cp: b2, violations: 0 };
    while rep.samples < samples {
        let pt = |rng: &mut ChaCha8Rng| -> f64 {
            // mix scales so that deep and shallow configurations both occur
            let x: f64 = rng.gen_range(-5.0..5.0);
            if rng.gen_bool(0.3) {
                x * 10f64.powi(rng.gen_range(-3..=0))
            } else {
                x
            }
        };
        let start = if rng.gen_bool(0.5) { BoundaryPoint::Inf } else { BoundaryPoint::real(pt(&mut rng)) };
        let end = BoundaryPoint::real(pt(&mut rng));
        let (l1, l2) = (pt(&mut rng), pt(&mut rng));
        let pts = [&start, &end];
        if l1 == l2 || pts.iter().any(|p| p.same(&BoundaryPoint::real(l1)) || p.same(&BoundaryPoint::real(l2))) || start.same(&end) {
            continue;
        }
        let rho = Geodesic::new(start, end)?;
        let l = Geodesic::real(l1, l2)?;
        let pen = penetration_maps(&rho, &l, eps)?;
        let (Some(ell), Some(ftp), Some(cp)) = (pen.ell.finite(), pen.ftp.finite(), pen.cp.finite()) else {
            continue;
        };
        let d1 = (ftp - ell).abs();
        let d2 = (cp - ftp).abs();
        rep.max_ftp_minus_ell = rep.max_ftp_minus_ell.max(d1);
        rep.max_cp_minus_ftp = rep.max_cp_minus_ftp.max(d2);
        if d1 > b1 || d2 > b2 {
            rep.violations += 1;
        }
        rep.samples += 1;
    }
    Ok(rep)
}

/// Diameter of `N_ε(L1) ∩ N_ε(L2)` in the hyperbolic plane (`0` if empty,
/// `∞` if the lines are asymptotic).
///
/// After moving `L1` to the imaginary axis, the four boundary curves are
/// traced by arclength; the parts of each curve inside the other
/// neighbourhood are located by sign changes and bisection.  The diameter
/// is the largest distance among the vertices (curve intersections) and
/// sampled boundary points.
pub fn neighborhood_intersection_diameter(l1: &Geodesic, l2: &Geodesic, eps: f64) -> Result<f64, PenetrationError> {
    if !(eps > 0.0) {
        return Err(PenetrationError::NonPositiveEpsilon(eps));
    }
    let real = |p: &BoundaryPoint| p.is_inf() || p.coord().map(|z| z.im == 0.0).unwrap_or(false);
    if ![&l1.p_minus, &l1.p_plus, &l2.p_minus, &l2.p_plus].iter().all(|p| real(p)) {
        return Err(PenetrationError::NotPlanar);
    }
    let same_line = (l1.p_minus.same(&l2.p_minus) && l1.p_plus.same(&l2.p_plus)) || (l1.p_minus.same(&l2.p_plus) && l1.p_plus.same(&l2.p_minus));
    if same_line {
        return Err(PenetrationError::Geom(GeomError::Coincident));
    }
    let shared = [&l2.p_minus, &l2.p_plus].iter().any(|p| p.same(&l1.p_minus) || p.same(&l1.p_plus));
    if shared {
        return Ok(f64::INFINITY);
    }
    let n = CMoebius::normalizing(l1);
    let (p, q) = match (n.apply(&l2.p_minus).coord(), n.apply(&l2.p_plus).coord()) {
        (Some(p), Some(q)) => (p.re, q.re),
        _ => return Ok(f64::INFINITY),
    };
    let axis1 = Geodesic::new(BoundaryPoint::real(0.0), BoundaryPoint::Inf)?;
    let axis2 = Geodesic::real(p, q)?;
    let g2 = CMoebius::real(q, p, 1.0, 1.0);
    let (th, ch) = (eps.tanh(), eps.cosh());
    // boundary curves, parametrised by arclength along their geodesic
    let curve = |which: usize, t: f64| -> HPoint {
        let sgn = if which % 2 == 0 { 1.0 } else { -1.0 };
        let w = HPoint::new(Complex64::new(sgn * th * t.exp(), 0.0), t.exp() / ch);
        if which < 2 {
            w
        } else {
            g2.apply_point(&w)
        }
    };
    let d_axis = |pt: &HPoint, g: &Geodesic| crate::hgeom::point_to_geodesic(pt, g);
    // centre each scan on the point of the curve's axis closest to the other axis
    let centre = |which: usize| -> f64 {
        let other = if which < 2 { &axis2 } else { &axis1 };
        let on_axis = |t: f64| if which < 2 { HPoint::new(Complex64::new(0.0, 0.0), t.exp()) } else { g2.apply_point(&HPoint::new(Complex64::new(0.0, 0.0), t.exp())) };
        golden_min(|t| d_axis(&on_axis(t), other), -80.0, 80.0, 1e-10).0
    };
    let mut pts: Vec<HPoint> = Vec::new();
    for which in 0..4 {
        let other = if which < 2 { &axis2 } else { &axis1 };
        let g = |t: f64| d_axis(&curve(which, t), other) - eps;
        let t0 = centre(which);
        let (span, step) = (40.0, 0.01);
        let mut t = t0 - span;
        let mut prev = g(t);
        while t < t0 + span {
            let tn = t + step;
            let cur = g(tn);
            if cur <= 0.0 {
                pts.push(curve(which, tn));
            }
            if (prev <= 0.0) != (cur <= 0.0) {
                if let Some(tv) = bisect(&g, t, tn, 1e-14) {
                    pts.push(curve(which, tv));
                }
            }
            prev = cur;
            t = tn;
        }
    }
    let mut best = 0.0f64;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            best = best.max(dist(&pts[i], &pts[j]));
        }
    }
    Ok(best)
}

/// Golden axes of the form `(a, b, c)` with `1 ≤ a ≤ a_max` and centre in
/// `[−x_max, x_max]`, as geodesics.
pub fn golden_axes(a_max: i64, x_max: f64) -> Vec<(BQForm, Geodesic)> {
    let s5 = 5f64.sqrt();
    let mut out = Vec::new();
    for a in 1..=a_max {
        let bmax = (2.0 * a as f64 * x_max).ceil() as i64 + 1;
        for b in -bmax..=bmax {
            let num = b * b - 5;
            if b.rem_euclid(2) == 1 && num % (4 * a) == 0 {
                let c = num / (4 * a);
                if gcd3(a as i128, b as i128, c as i128) != 1 {
                    continue;
                }
                let cen = -(b as f64) / (2.0 * a as f64);
                if cen.abs() > x_max {
                    continue;
                }
                let r = s5 / (2.0 * a as f64);
                if let (Ok(f), Ok(g)) = (BQForm::from_i64(a, b, c), Geodesic::real(cen - r, cen + r)) {
                    out.push((f, g));
                }
            }
        }
    }
    out
}
