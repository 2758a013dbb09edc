//! Real hyperbolic geometry in the upper half-plane and half-space.
//!
//! Boundary points are elements of `ℂ ∪ {∞}` (real ones for `H²`), so every
//! routine serves both dimensions: a configuration of `H²` is a configuration
//! of `H³` whose boundary points happen to be real.  Geodesic quantities are
//! computed after moving the reference line `L` to the vertical axis
//! `(0, ∞)` by a complex Möbius map, which is an isometry of `H³`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::QuadSurd;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("the point at infinity is not allowed here")]
    InfiniteArgument,
    #[error("coincident boundary points")]
    Coincident,
    #[error("argument {0} out of range")]
    OutOfRange(f64),
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(f64),
    #[error("geodesics share an endpoint")]
    SharedEndpoint,
}

/// `[0, +∞]`-style values; infinity never leaks into float arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum ExtReal {
    Finite(f64),
    Infinite,
}

impl ExtReal {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtReal::Infinite)
    }

    pub fn finite(&self) -> Option<f64> {
        match self {
            ExtReal::Finite(x) => Some(*x),
            ExtReal::Infinite => None,
        }
    }

    /// `|x − y|` with the convention `∞ − ∞ = 0`; `None` if exactly one side is infinite.
    pub fn abs_diff(&self, o: &ExtReal) -> Option<f64> {
        match (self, o) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => Some((a - b).abs()),
            (ExtReal::Infinite, ExtReal::Infinite) => Some(0.0),
            _ => None,
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(x) => write!(f, "{x}"),
            ExtReal::Infinite => f.write_str("inf"),
        }
    }
}

/// A point of `∂H³ = ℂ ∪ {∞}`, optionally backed by an exact value.
#[derive(Clone, Debug)]
pub enum BoundaryPoint {
    Inf,
    Finite { z: Complex64, exact: Option<QuadSurd> },
}

impl BoundaryPoint {
    pub fn real(x: f64) -> Self {
        BoundaryPoint::Finite { z: Complex64::new(x, 0.0), exact: None }
    }

    pub fn complex(z: Complex64) -> Self {
        BoundaryPoint::Finite { z, exact: None }
    }

    pub fn exact(x: &QuadSurd) -> Self {
        BoundaryPoint::Finite { z: x.to_c64_accurate(), exact: Some(x.clone()) }
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, BoundaryPoint::Inf)
    }

    pub fn coord(&self) -> Option<Complex64> {
        match self {
            BoundaryPoint::Inf => None,
            BoundaryPoint::Finite { z, .. } => Some(*z),
        }
    }

    /// Equality: exact when both points carry exact values, bitwise otherwise.
    pub fn same(&self, o: &BoundaryPoint) -> bool {
        match (self, o) {
            (BoundaryPoint::Inf, BoundaryPoint::Inf) => true,
            (BoundaryPoint::Finite { z: a, exact: Some(x) }, BoundaryPoint::Finite { z: b, exact: Some(y) }) => {
                if x.delta == y.delta || !x.is_irrational() || !y.is_irrational() {
                    x == y
                } else {
                    a == b
                }
            }
            (BoundaryPoint::Finite { z: a, .. }, BoundaryPoint::Finite { z: b, .. }) => a == b,
            _ => false,
        }
    }
}

impl QuadSurd {
    /// Complex embedding with the cancellation-safe real path.
    pub fn to_c64_accurate(&self) -> Complex64 {
        if self.is_real() {
            Complex64::new(self.to_f64(), 0.0)
        } else {
            self.to_c64()
        }
    }
}

/// An oriented geodesic line `p_minus → p_plus`.
#[derive(Clone, Debug)]
pub struct Geodesic {
    pub p_minus: BoundaryPoint,
    pub p_plus: BoundaryPoint,
}

impl Geodesic {
    pub fn new(p_minus: BoundaryPoint, p_plus: BoundaryPoint) -> Result<Self, GeomError> {
        if p_minus.same(&p_plus) {
            return Err(GeomError::Coincident);
        }
        Ok(Geodesic { p_minus, p_plus })
    }

    pub fn real(a: f64, b: f64) -> Result<Self, GeomError> {
        Self::new(BoundaryPoint::real(a), BoundaryPoint::real(b))
    }

    /// Vertical line from `x` up to `∞`.
    pub fn vertical_up(x: f64) -> Self {
        Geodesic { p_minus: BoundaryPoint::real(x), p_plus: BoundaryPoint::Inf }
    }

    /// Vertical line from `∞` down to `x`.
    pub fn from_infinity(x: BoundaryPoint) -> Self {
        Geodesic { p_minus: BoundaryPoint::Inf, p_plus: x }
    }

    pub fn reversed(&self) -> Self {
        Geodesic { p_minus: self.p_plus.clone(), p_plus: self.p_minus.clone() }
    }
}

/// Horoball centred at `center`: Euclidean height (`center = ∞`) or diameter.
#[derive(Clone, Debug)]
pub struct Horoball {
    pub center: BoundaryPoint,
    pub param: f64,
}

impl Horoball {
    pub fn standard() -> Self {
        Horoball { center: BoundaryPoint::Inf, param: 1.0 }
    }
}

/// Complex distance `ℓ + iθ` with `θ ∈ [0, π]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexDistance {
    pub ell: f64,
    pub theta: f64,
    /// Set for the shared-endpoint conventions `0+i0` / `0+iπ`.
    pub degenerate: bool,
}

impl ComplexDistance {
    /// `cosh ℓ + cos θ`, evaluated without cancellation.
    pub fn plus(&self) -> f64 {
        let s = (self.ell / 2.0).sinh();
        let c = (self.theta / 2.0).cos();
        2.0 * (s * s + c * c)
    }

    /// `cosh ℓ − cos θ`.
    pub fn minus(&self) -> f64 {
        let s = (self.ell / 2.0).sinh();
        let c = (self.theta / 2.0).sin();
        2.0 * (s * s + c * c)
    }
}

/// A point `(z, h)` of the upper half-space, `h > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HPoint {
    pub z: Complex64,
    pub h: f64,
}

impl HPoint {
    pub fn new(z: Complex64, h: f64) -> Self {
        HPoint { z, h }
    }

    pub fn real(x: f64, h: f64) -> Self {
        HPoint { z: Complex64::new(x, 0.0), h }
    }
}

/// Hyperbolic distance in the upper half-space.
pub fn dist(p: &HPoint, q: &HPoint) -> f64 {
    let e = ((p.z - q.z).norm_sqr() + (p.h - q.h).powi(2)).sqrt();
    2.0 * (e / (2.0 * (p.h * q.h).sqrt())).asinh()
}

/// A complex Möbius map acting on `ℂ ∪ {∞}` and, by Poincaré extension, on `H³`.
#[derive(Clone, Copy, Debug)]
pub struct CMoebius {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl CMoebius {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        // scale to determinant one so the extension formula applies
        let det = a * d - b * c;
        let s = det.sqrt();
        CMoebius { a: a / s, b: b / s, c: c / s, d: d / s }
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        let r = |x: f64| Complex64::new(x, 0.0);
        Self::new(r(a), r(b), r(c), r(d))
    }

    /// The map sending `L₋ ↦ 0` and `L₊ ↦ ∞`.
    pub fn normalizing(l: &Geodesic) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        match (l.p_minus.coord(), l.p_plus.coord()) {
            (Some(m), Some(p)) => Self::new(one, -m, one, -p),
            (Some(m), None) => Self::new(one, -m, zero, one),
            (None, Some(p)) => Self::new(zero, one, one, -p),
            (None, None) => unreachable!("geodesic endpoints are distinct"),
        }
    }

    pub fn apply(&self, x: &BoundaryPoint) -> BoundaryPoint {
        match x {
            BoundaryPoint::Inf => {
                if self.c == Complex64::new(0.0, 0.0) {
                    BoundaryPoint::Inf
                } else {
                    BoundaryPoint::complex(self.a / self.c)
                }
            }
            BoundaryPoint::Finite { z, .. } => {
                let den = self.c * z + self.d;
                if den == Complex64::new(0.0, 0.0) {
                    BoundaryPoint::Inf
                } else {
                    BoundaryPoint::complex((self.a * z + self.b) / den)
                }
            }
        }
    }

    pub fn apply_point(&self, p: &HPoint) -> HPoint {
        let czd = self.c * p.z + self.d;
        let den = czd.norm_sqr() + self.c.norm_sqr() * p.h * p.h;
        let z = ((self.a * p.z + self.b) * czd.conj() + self.a * self.c.conj() * p.h * p.h) / den;
        HPoint { z, h: p.h / den }
    }

    pub fn apply_geodesic(&self, g: &Geodesic) -> Geodesic {
        Geodesic { p_minus: self.apply(&g.p_minus), p_plus: self.apply(&g.p_plus) }
    }
}

/// Euclidean distance of finite boundary points: the Hamenstädt distance for
/// the horoball of height one centred at `∞`.
pub fn hamenstadt_distance(a: &BoundaryPoint, b: &BoundaryPoint) -> Result<f64, GeomError> {
    match (a.coord(), b.coord()) {
        (Some(x), Some(y)) => Ok((x - y).norm()),
        _ => Err(GeomError::InfiniteArgument),
    }
}

/// The limit definition `e^{½ d(ξ_t, ξ'_t) − t}` evaluated at time `t`, with
/// `ξ_t` the point of the vertical line over `ξ` at height `e^{−t}`.
pub fn hamenstadt_at_time(a: &BoundaryPoint, b: &BoundaryPoint, t: f64) -> Result<f64, GeomError> {
    let (x, y) = match (a.coord(), b.coord()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(GeomError::InfiniteArgument),
    };
    let h = (-t).exp();
    let d = dist(&HPoint::new(x, h), &HPoint::new(y, h));
    Ok((0.5 * d - t).exp())
}

fn check_distinct(pts: &[&BoundaryPoint]) -> Result<(), GeomError> {
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[i].same(pts[j]) {
                return Err(GeomError::Coincident);
            }
        }
    }
    Ok(())
}

/// Ratio `|x − y|` with the convention that factors involving `∞` cancel in pairs.
fn gap(x: &BoundaryPoint, y: &BoundaryPoint) -> Option<f64> {
    match (x.coord(), y.coord()) {
        (Some(a), Some(b)) => Some((a - b).norm()),
        _ => None,
    }
}

/// Boundary crossratio `[a,b,c,d] = log (|c−a|·|d−b|)/(|c−b|·|d−a|)`.
pub fn crossratio(a: &BoundaryPoint, b: &BoundaryPoint, c: &BoundaryPoint, d: &BoundaryPoint) -> Result<f64, GeomError> {
    check_distinct(&[a, b, c, d])?;
    let num = [gap(c, a), gap(d, b)];
    let den = [gap(c, b), gap(d, a)];
    let prod = |v: [Option<f64>; 2]| v.iter().flatten().map(|x| x.ln()).sum::<f64>();
    Ok(prod(num) - prod(den))
}

/// Complex distance from the oriented line `g` to the oriented line `l`.
///
/// With `l` moved to `(0, ∞)` and `g` to `(p, q)`, the complex distance `δ`
/// satisfies `cosh δ = (q + p)/(q − p)`.
pub fn complex_distance(g: &Geodesic, l: &Geodesic) -> ComplexDistance {
    let asym = ComplexDistance { ell: 0.0, theta: 0.0, degenerate: true };
    let opposite = ComplexDistance { ell: 0.0, theta: PI, degenerate: true };
    if g.p_plus.same(&l.p_plus) || g.p_minus.same(&l.p_minus) {
        return asym;
    }
    if g.p_plus.same(&l.p_minus) || g.p_minus.same(&l.p_plus) {
        return opposite;
    }
    let m = CMoebius::normalizing(l);
    let (p, q) = match (m.apply(&g.p_minus).coord(), m.apply(&g.p_plus).coord()) {
        (Some(p), Some(q)) => (p, q),
        // rounding sent an endpoint to ∞: treat as asymptotic
        (None, _) => return opposite,
        (_, None) => return asym,
    };
    let w = (q + p) / (q - p);
    // acosh(w) = 2 asinh(√((w−1)/2)) keeps accuracy near w = 1
    let delta = 2.0 * ((w - 1.0) / 2.0).sqrt().asinh();
    let (mut ell, mut theta) = (delta.re, delta.im);
    if ell < 0.0 {
        ell = -ell;
        theta = -theta;
    }
    let theta = theta.rem_euclid(2.0 * PI);
    let theta = if theta > PI { 2.0 * PI - theta } else { theta };
    ComplexDistance { ell, theta, degenerate: false }
}

/// `[γ₋, L₋, γ₊, L₊] = −log((cosh ℓ + cos θ)/2)`.
pub fn crossratio_geom(g: &Geodesic, l: &Geodesic) -> Result<f64, GeomError> {
    check_distinct(&[&g.p_minus, &g.p_plus, &l.p_minus, &l.p_plus])?;
    let cd = complex_distance(g, l);
    Ok(-(cd.plus() / 2.0).ln())
}

/// `max{0, −log((cosh ℓ ± cos θ)/2)}`; `+∞` when an endpoint is shared.
pub fn cp_value(g: &Geodesic, l: &Geodesic) -> ExtReal {
    if check_distinct(&[&g.p_minus, &g.p_plus, &l.p_minus, &l.p_plus]).is_err() {
        return ExtReal::Infinite;
    }
    let cd = complex_distance(g, l);
    let v = -(cd.plus().min(cd.minus()) / 2.0).ln();
    ExtReal::Finite(v.max(0.0))
}

/// The three penetration gauges of `ρ` (starting at `ρ₋`) into `L`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Penetration {
    pub ell: ExtReal,
    pub ftp: ExtReal,
    pub cp: ExtReal,
}

/// `c′₁(ε) = 2 argsinh(coth ε)`.
pub fn c1_prime(eps: f64) -> f64 {
    2.0 * (1.0 / eps.tanh()).asinh()
}

/// Length of `ρ ∩ N_ε(L)` where `N_ε(L)` is the cone `|z| ≤ sinh(ε)·h`
/// after normalisation; `p, q` are the normalised endpoints of `ρ`.
fn cone_penetration(p: Complex64, q: Complex64, eps: f64) -> f64 {
    let c0 = (p + q) / 2.0;
    let r = (q - p).norm() / 2.0;
    let e = (q - p) / (2.0 * r);
    let sig = eps.sinh();
    let kappa = (c0 * e.conj()).re;
    // r²(1+σ²)s² + 2rκ s + |c0|² − σ²r² ≤ 0 along z(s) = c0 + r s e
    let a = r * r * (1.0 + sig * sig);
    let b = 2.0 * r * kappa;
    let c = c0.norm_sqr() - sig * sig * r * r;
    let disc = b * b - 4.0 * a * c;
    if disc <= 0.0 {
        return 0.0;
    }
    let sq = disc.sqrt();
    // numerically stable pair of roots
    let qq = -0.5 * (b + b.signum() * sq);
    let (mut s1, mut s2) = if qq != 0.0 { (qq / a, c / qq) } else { (-sq / (2.0 * a), sq / (2.0 * a)) };
    if s1 > s2 {
        std::mem::swap(&mut s1, &mut s2);
    }
    let s1 = s1.clamp(-1.0, 1.0);
    let s2 = s2.clamp(-1.0, 1.0);
    // arclength along the semicircle is artanh(s)
    0.5 * (((1.0 + s2) * (1.0 - s1)) / ((1.0 - s2) * (1.0 + s1))).ln().abs()
}

/// Penetration length, fellow-traveller and crossratio penetration of `ρ` into `L`.
pub fn penetration_maps(rho: &Geodesic, l: &Geodesic, eps: f64) -> Result<Penetration, GeomError> {
    if eps <= 0.0 || eps.is_nan() {
        return Err(GeomError::NonPositiveEpsilon(eps));
    }
    let xi = &rho.p_minus;
    let end = &rho.p_plus;
    let on_l = |x: &BoundaryPoint| x.same(&l.p_minus) || x.same(&l.p_plus);
    let cp = if on_l(xi) || on_l(end) {
        ExtReal::Infinite
    } else {
        let a = crossratio(xi, &l.p_minus, end, &l.p_plus)?;
        let b = crossratio(xi, &l.p_plus, end, &l.p_minus)?;
        ExtReal::Finite(a.max(b).max(0.0))
    };
    if on_l(xi) || on_l(end) {
        // an endpoint at infinity of L: the geodesic is asymptotic to L and
        // at least one projection escapes to ∂L
        return Ok(Penetration { ell: ExtReal::Infinite, ftp: ExtReal::Infinite, cp });
    }
    let m = CMoebius::normalizing(l);
    let (p, q) = match (m.apply(xi).coord(), m.apply(end).coord()) {
        (Some(p), Some(q)) if p.norm() > 0.0 && q.norm() > 0.0 => (p, q),
        _ => return Ok(Penetration { ell: ExtReal::Infinite, ftp: ExtReal::Infinite, cp }),
    };
    let ell = ExtReal::Finite(cone_penetration(p, q, eps));
    let ftp = ExtReal::Finite((q.norm() / p.norm()).ln().abs());
    Ok(Penetration { ell, ftp, cp })
}

/// Length `log cot(α/2)` from the angle-`α` point of a boundary-centred
/// circle to its top.
pub fn circle_arc_length(alpha: f64) -> Result<f64, GeomError> {
    if !(alpha > 0.0 && alpha <= PI / 2.0) {
        return Err(GeomError::OutOfRange(alpha));
    }
    Ok((1.0 / (alpha / 2.0).tan()).ln())
}

/// Signed depth `−log(|a−b|/2)` of the geodesic `(a, b)` below the
/// horoball of height one; negative values mean the two intersect.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Depth {
    pub value: f64,
    pub intersecting: bool,
}

pub fn horoball_geodesic_depth(g: &Geodesic) -> Result<Depth, GeomError> {
    let w = hamenstadt_distance(&g.p_minus, &g.p_plus)?;
    let value = -(w / 2.0).ln();
    Ok(Depth { value, intersecting: value < 0.0 })
}

/// Distance from a point to a geodesic line.
pub fn point_to_geodesic(x: &HPoint, l: &Geodesic) -> f64 {
    let m = CMoebius::normalizing(l);
    let y = m.apply_point(x);
    // distance to the vertical axis: sinh d = |z|/h
    (y.z.norm() / y.h).asinh()
}

/// Orthogonal projection of a boundary point onto `L`, as a point of `L`;
/// `None` when the point is an endpoint of `L`.
pub fn project_boundary(x: &BoundaryPoint, l: &Geodesic) -> Option<HPoint> {
    if x.same(&l.p_minus) || x.same(&l.p_plus) {
        return None;
    }
    let m = CMoebius::normalizing(l);
    let w = m.apply(x).coord()?;
    let foot = HPoint::new(Complex64::new(0.0, 0.0), w.norm());
    let inv = CMoebius { a: m.d, b: -m.b, c: -m.c, d: m.a };
    Some(inv.apply_point(&foot))
}
