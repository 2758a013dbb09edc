//! Complex hyperbolic kernel: the Siegel domain, the Heisenberg group on its
//! boundary, Cygan distances, and the depth of a complex geodesic below the
//! horoball `H₂ = {2 Re w₀ − |w|² ≥ 2}`.
//!
//! Points are `(w₀, w) ∈ ℂ × ℂⁿ⁻¹` with `2 ≤ n ≤ 4`.  The boundary
//! `2 Re w₀ = |w|²` is the Heisenberg group with law
//!
//! ```text
//! (w₀, w)·(w₀′, w′) = (w₀ + w₀′ + ⟨w′, w⟩, w + w′)
//! ```
//!
//! where the pairing is Hermitian.  Both choices of which argument is
//! conjugated give a closed, associative law with inverse `(w̄₀, −w)`; the
//! default is `⟨w′, w⟩ = Σ w′ᵢ·w̄ᵢ`, the unprimed factor conjugated.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{is_squarefree, BaseScalar, ExactError, QuadSurd};
use crate::numeric::golden_min;

/// Tolerance on `2 Re w₀ − |w|²` for boundary points.
pub const BOUNDARY_TOL: f64 = 1e-12;
pub const MAX_DIM: usize = 4;

#[derive(Debug, Error)]
pub enum ChcError {
    #[error("point is off the Heisenberg group: 2Re w0 - |w|^2 = {0:e}")]
    OffBoundary(f64),
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("complex dimension must be between 2 and {MAX_DIM}, got {0}")]
    BadDimension(usize),
    #[error("points coincide")]
    Coincident,
    #[error("m = {0} is not squarefree")]
    NotSquarefree(u64),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

fn herm(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

fn norm_sq(w: &[Complex64]) -> f64 {
    w.iter().map(|z| z.norm_sqr()).sum()
}

/// A point of the closed Siegel domain.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SiegelPoint {
    pub w0: Complex64,
    pub w: Vec<Complex64>,
}

impl SiegelPoint {
    pub fn new(w0: Complex64, w: Vec<Complex64>) -> Result<Self, ChcError> {
        if w.is_empty() || w.len() + 1 > MAX_DIM {
            return Err(ChcError::BadDimension(w.len() + 1));
        }
        Ok(SiegelPoint { w0, w })
    }

    /// `2 Re w₀ − |w|²`, the horospherical height.
    pub fn level(&self) -> f64 {
        2.0 * self.w0.re - norm_sq(&self.w)
    }

    pub fn is_interior(&self) -> bool {
        self.level() > 0.0
    }

    pub fn is_boundary(&self) -> bool {
        self.level().abs() <= BOUNDARY_TOL * (1.0 + self.w0.norm())
    }
}

/// Order of the factors in the Hermitian pairing of the group law (the right factor is conjugated).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Pairing {
    /// `⟨w′, w⟩ = Σ w′ᵢ w̄ᵢ`.
    #[default]
    PrimedLeft,
    /// `⟨w, w′⟩ = Σ wᵢ w̄′ᵢ`.
    PrimedRight,
}

/// A point of `Heis_{2n−1}(ℝ)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeisPoint {
    pub w0: Complex64,
    pub w: Vec<Complex64>,
}

impl HeisPoint {
    /// Checks `2 Re w₀ = |w|²` to [`BOUNDARY_TOL`] (relative).
    pub fn new(w0: Complex64, w: Vec<Complex64>) -> Result<Self, ChcError> {
        if w.is_empty() || w.len() + 1 > MAX_DIM {
            return Err(ChcError::BadDimension(w.len() + 1));
        }
        let p = HeisPoint { w0, w };
        let gap = p.closure_gap();
        if gap.abs() > BOUNDARY_TOL * (1.0 + p.w0.norm() + norm_sq(&p.w)) {
            return Err(ChcError::OffBoundary(gap));
        }
        Ok(p)
    }

    /// The point with horizontal part `w` and vertical coordinate `t`:
    /// `w₀ = |w|²/2 + i t`.
    pub fn from_horizontal(w: Vec<Complex64>, t: f64) -> Result<Self, ChcError> {
        let w0 = Complex64::new(norm_sq(&w) / 2.0, t);
        Self::new(w0, w)
    }

    pub fn identity(n: usize) -> Self {
        HeisPoint { w0: Complex64::zero(), w: vec![Complex64::zero(); n - 1] }
    }

    pub fn dim(&self) -> usize {
        self.w.len() + 1
    }

    pub fn closure_gap(&self) -> f64 {
        2.0 * self.w0.re - norm_sq(&self.w)
    }

    pub fn mul(&self, o: &HeisPoint, pairing: Pairing) -> Result<HeisPoint, ChcError> {
        if self.w.len() != o.w.len() {
            return Err(ChcError::Dimension(self.dim(), o.dim()));
        }
        let cross = match pairing {
            Pairing::PrimedLeft => herm(&o.w, &self.w),
            Pairing::PrimedRight => herm(&self.w, &o.w),
        };
        let w: Vec<Complex64> = self.w.iter().zip(&o.w).map(|(a, b)| a + b).collect();
        HeisPoint::new(self.w0 + o.w0 + cross, w)
    }

    /// `(w̄₀, −w)` for either pairing.
    pub fn inv(&self) -> HeisPoint {
        HeisPoint { w0: self.w0.conj(), w: self.w.iter().map(|z| -z).collect() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeisOp {
    Mul,
    Inv,
}

/// `a·b`, or `a⁻¹` (ignoring `b`).
pub fn heis_group(a: &HeisPoint, b: &HeisPoint, op: HeisOp) -> Result<HeisPoint, ChcError> {
    match op {
        HeisOp::Mul => a.mul(b, Pairing::default()),
        HeisOp::Inv => Ok(a.inv()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CyganDistances {
    pub d_cyg: f64,
    pub d_cyg_mod: f64,
}

/// Gauge of `(w₀, w)` against the identity.
pub fn cygan_gauge(p: &HeisPoint) -> CyganDistances {
    let a = 2.0 * p.w0.norm();
    CyganDistances { d_cyg: a.sqrt(), d_cyg_mod: (a + norm_sq(&p.w)).sqrt() }
}

/// Left-invariant Cygan and modified Cygan distances, evaluated at `b⁻¹·a`.
pub fn cygan_distances(a: &HeisPoint, b: &HeisPoint) -> Result<CyganDistances, ChcError> {
    cygan_distances_with(a, b, Pairing::default())
}

pub fn cygan_distances_with(a: &HeisPoint, b: &HeisPoint, pairing: Pairing) -> Result<CyganDistances, ChcError> {
    Ok(cygan_gauge(&b.inv().mul(a, pairing)?))
}

/// Depth of the complex geodesic `]γ₋, γ₊[` below the horosphere `∂H₂`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HoroballDepth {
    /// `−log(½ d_Cyg² / d′_Cyg)`; negative when the geodesic enters `H₂`.
    pub depth: f64,
    /// Largest horospherical level `s` reached by the geodesic.
    pub s_star: f64,
    pub d_cyg: f64,
    pub d_cyg_mod: f64,
}

/// Level `s(t) = 2eᵗ|w₀|²/|1 + eᵗw₀|²` of the geodesic from `(w₀, w)` to
/// `(0, 0)` parametrised as `(w₀, w)/(1 + eᵗ w₀)`.
pub fn level_along(w0: Complex64, t: f64) -> f64 {
    let e = t.exp();
    2.0 * e * w0.norm_sqr() / (Complex64::one() + w0 * e).norm_sqr()
}

pub fn horoball_depth_cc(gm: &HeisPoint, gp: &HeisPoint) -> Result<HoroballDepth, ChcError> {
    let rel = gm.inv().mul(gp, Pairing::default())?;
    if rel.w0.norm() == 0.0 {
        return Err(ChcError::Coincident);
    }
    let CyganDistances { d_cyg, d_cyg_mod } = cygan_gauge(&rel);
    let depth = -(0.5 * d_cyg * d_cyg / d_cyg_mod).ln();
    let r = rel.w0.norm();
    let s_star = r * r / (r + norm_sq(&rel.w) / 2.0);
    let alt = 0.5 * (2.0 / s_star).ln();
    assert!((depth - alt).abs() <= 1e-12 * (1.0 + depth.abs()), "depth routes disagree: {depth} vs {alt}");
    Ok(HoroballDepth { depth, s_star, d_cyg, d_cyg_mod })
}

/// `max_t s(t)` by golden-section search on `[−30, 30]`.
pub fn level_max_numeric(gm: &HeisPoint, gp: &HeisPoint) -> Result<f64, ChcError> {
    let rel = gm.inv().mul(gp, Pairing::default())?;
    let (_, neg) = golden_min(|t| -level_along(rel.w0, t), -30.0, 30.0, 1e-13);
    Ok(-neg)
}

/// The arithmetic data attached to `K = ℚ(i√m)` in complex dimension 2.
#[derive(Clone, Debug, Serialize)]
pub struct EisensteinObjects {
    pub m: u64,
    #[serde(serialize_with = "ser_surd")]
    pub alpha0: QuadSurd,
    #[serde(serialize_with = "ser_surd")]
    pub alpha0_conj: QuadSurd,
    /// `γ₀` entries as text over `ℚ(i√m)`.
    pub gamma0: [[String; 3]; 3],
    pub preserves_form: bool,
    pub fixes_alpha0: bool,
    pub fixes_conjugate: bool,
    /// Float residual of `γ₀* Q γ₀ − Q`.
    pub form_residual: f64,
    /// `1/d_Cyg((α₀,0), (α₀^σ,0))`.
    pub h_prime: f64,
    /// Radius of the precisely invariant horoball, `2√m`.
    pub horoball_level: f64,
    pub check: bool,
}

fn ser_surd<S: serde::Serializer>(x: &QuadSurd, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_text())
}

fn k_text(x: &BaseScalar) -> String {
    QuadSurd::from_scalar(x.clone()).to_text()
}

type KMat = [[BaseScalar; 3]; 3];

fn k_mul(a: &KMat, b: &KMat) -> Result<KMat, ExactError> {
    let mut out: KMat = std::array::from_fn(|_| std::array::from_fn(|_| BaseScalar::zero()));
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = BaseScalar::zero();
            for k in 0..3 {
                acc = acc.checked_add(&a[i][k].checked_mul(&b[k][j])?)?;
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

/// Builds `α₀ = (i/2)(√(m+4) − √m)`, its conjugate and `γ₀`, and checks
/// exactly that `γ₀` preserves `q = −z₀z̄₂ − z₂z̄₀ + z₁z̄₁` and fixes
/// `[α₀ : 0 : 1]` and `[α₀^σ : 0 : 1]`.
pub fn eisenstein_objects(m: u64) -> Result<EisensteinObjects, ChcError> {
    if m == 0 || !is_squarefree(m) {
        return Err(ChcError::NotSquarefree(m));
    }
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let k = |re: BigRational, im: BigRational| BaseScalar::new(re, im, m);
    // α₀ = −(i√m)/2 + ½·√(−(m+4))
    let u = k(q(0, 1), q(-1, 2));
    let alpha0 = QuadSurd::new(u, BaseScalar::ratio(1, 2), BaseScalar::int(-(m as i64 + 4)))?;
    let alpha0_conj = alpha0.galois_conjugate();
    let zero = || k(q(0, 1), q(0, 1));
    let one = || k(q(1, 1), q(0, 1));
    let isq = |s: i64| k(q(0, 1), q(s, 1));
    let g: KMat = [
        [k(q(m as i64 + 1, 1), q(0, 1)), zero(), isq(-1)],
        [zero(), one(), zero()],
        [isq(1), zero(), one()],
    ];
    let neg1 = || k(q(-1, 1), q(0, 1));
    let form: KMat = [[zero(), zero(), neg1()], [zero(), one(), zero()], [neg1(), zero(), zero()]];
    let g_star: KMat = std::array::from_fn(|i| std::array::from_fn(|j| g[j][i].conj()));
    let lhs = k_mul(&k_mul(&g_star, &form)?, &g)?;
    let preserves_form = (0..9).all(|t| lhs[t / 3][t % 3].checked_add(&form[t / 3][t % 3].checked_mul(&BaseScalar::int(-1)).unwrap()).map(|z| z.is_zero()).unwrap_or(false));
    let to_c = |a: &KMat| -> [[Complex64; 3]; 3] { std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].to_c64())) };
    let (lc, fc) = (to_c(&lhs), to_c(&form));
    let form_residual = (0..9).map(|t| (lc[t / 3][t % 3] - fc[t / 3][t % 3]).norm()).fold(0.0, f64::max);
    // γ₀(x, 0, 1) ∝ (x, 0, 1)  ⇔  g₀₀x + g₀₂ = x(g₂₀x + g₂₂)
    let fixes = |x: &QuadSurd| -> Result<bool, ExactError> {
        let s = |b: &BaseScalar| QuadSurd::from_scalar(b.clone());
        let top = s(&g[0][0]).checked_mul(x)?.checked_add(&s(&g[0][2]))?;
        let bot = s(&g[2][0]).checked_mul(x)?.checked_add(&s(&g[2][2]))?;
        Ok(top.checked_sub(&x.checked_mul(&bot)?)?.as_scalar().map(|z| z.is_zero()).unwrap_or(false))
    };
    let fixes_alpha0 = fixes(&alpha0)?;
    let fixes_conjugate = fixes(&alpha0_conj)?;
    let p = HeisPoint::new(alpha0.to_c64(), vec![Complex64::zero()])?;
    let pc = HeisPoint::new(alpha0_conj.to_c64(), vec![Complex64::zero()])?;
    let h_prime = 1.0 / cygan_distances(&p, &pc)?.d_cyg;
    let gamma0 = std::array::from_fn(|i| std::array::from_fn(|j| k_text(&g[i][j])));
    Ok(EisensteinObjects {
        m,
        alpha0,
        alpha0_conj,
        gamma0,
        preserves_form,
        fixes_alpha0,
        fixes_conjugate,
        form_residual,
        h_prime,
        horoball_level: 2.0 * (m as f64).sqrt(),
        check: preserves_form && fixes_alpha0 && fixes_conjugate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pt(w: Vec<Complex64>, t: f64) -> HeisPoint {
        HeisPoint::from_horizontal(w, t).unwrap()
    }

    #[test]
    fn central_direction_adds() {
        let a = HeisPoint::new(c(0.0, 1.0), vec![c(0.0, 0.0)]).unwrap();
        let b = HeisPoint::new(c(0.0, 2.0), vec![c(0.0, 0.0)]).unwrap();
        let p = heis_group(&a, &b, HeisOp::Mul).unwrap();
        assert_eq!(p.w0, c(0.0, 3.0));
    }

    #[test]
    fn unit_vertical_distances() {
        let a = HeisPoint::new(c(0.0, 1.0), vec![c(0.0, 0.0)]).unwrap();
        let d = cygan_distances(&a, &HeisPoint::identity(2)).unwrap();
        assert!((d.d_cyg - 2f64.sqrt()).abs() < 1e-15);
        assert!((d.d_cyg_mod - 2f64.sqrt()).abs() < 1e-15);
        let h = horoball_depth_cc(&HeisPoint::identity(2), &a).unwrap();
        assert!((h.s_star - 1.0).abs() < 1e-15);
        assert!((h.depth - 0.5 * 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn off_boundary_rejected() {
        assert!(matches!(HeisPoint::new(c(1.0, 0.0), vec![c(0.0, 0.0)]), Err(ChcError::OffBoundary(_))));
        let s = SiegelPoint::new(c(1.0, 0.0), vec![c(1.0, 0.0)]).unwrap();
        assert!(s.is_interior());
        assert!(!SiegelPoint::new(c(0.5, 3.0), vec![c(1.0, 0.0)]).unwrap().is_interior());
    }

    #[test]
    fn literal_bilinear_law_is_not_closed() {
        // Σ w′ᵢwᵢ without conjugation leaves the group for non-real w
        let (w, w2) = (c(0.3, 0.8), c(-0.5, 0.2));
        let a = pt(vec![w], 0.1);
        let b = pt(vec![w2], -0.4);
        let w0 = a.w0 + b.w0 + w2 * w;
        assert!(HeisPoint::new(w0, vec![w + w2]).is_err());
        assert!(a.mul(&b, Pairing::PrimedLeft).is_ok());
        assert!(a.mul(&b, Pairing::PrimedRight).is_ok());
    }

    #[test]
    fn eisenstein_m1() {
        let e = eisenstein_objects(1).unwrap();
        assert!(e.check, "{e:?}");
        let a = e.alpha0.to_c64();
        assert!((a - c(0.0, (5f64.sqrt() - 1.0) / 2.0)).norm() < 1e-15);
        assert!((1.0 / e.h_prime - (2.0 * 5f64.sqrt()).sqrt()).abs() < 1e-12);
        assert!((e.h_prime - 0.4729).abs() < 1e-4);
    }

    #[test]
    fn eisenstein_m3_root_of_polynomial() {
        let e = eisenstein_objects(3).unwrap();
        assert!(e.check);
        let a = e.alpha0.to_c64();
        let v = a * a + c(0.0, 3f64.sqrt()) * a + 1.0;
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn eisenstein_residuals() {
        for m in [1, 2, 3, 5] {
            let e = eisenstein_objects(m).unwrap();
            assert!(e.check && e.form_residual <= 1e-12, "m = {m}");
        }
        assert!(eisenstein_objects(4).is_err());
    }

    fn arb_point(n: usize) -> impl Strategy<Value = HeisPoint> {
        (prop::collection::vec((-3.0..3.0f64, -3.0..3.0f64), n - 1), -5.0..5.0f64)
            .prop_map(|(w, t)| HeisPoint::from_horizontal(w.into_iter().map(|(a, b)| c(a, b)).collect(), t).unwrap())
    }

    proptest! {
        #[test]
        fn group_axioms(a in arb_point(3), b in arb_point(3), d in arb_point(3)) {
            for pairing in [Pairing::PrimedLeft, Pairing::PrimedRight] {
                let l = a.mul(&b, pairing).unwrap().mul(&d, pairing).unwrap();
                let r = a.mul(&b.mul(&d, pairing).unwrap(), pairing).unwrap();
                prop_assert!((l.w0 - r.w0).norm() < 1e-12);
                let e = a.inv().mul(&a, pairing).unwrap();
                prop_assert!(e.w0.norm() < 1e-12 && e.w.iter().all(|z| z.norm() < 1e-15));
            }
        }

        #[test]
        fn metric_axioms(a in arb_point(2), b in arb_point(2), d in arb_point(2), g in arb_point(2)) {
            let dab = cygan_distances(&a, &b).unwrap();
            let dba = cygan_distances(&b, &a).unwrap();
            prop_assert!((dab.d_cyg - dba.d_cyg).abs() < 1e-12);
            prop_assert!((dab.d_cyg_mod - dba.d_cyg_mod).abs() < 1e-12);
            prop_assert!(dab.d_cyg_mod >= dab.d_cyg);
            let dad = cygan_distances(&a, &d).unwrap();
            let ddb = cygan_distances(&d, &b).unwrap();
            prop_assert!(dab.d_cyg <= dad.d_cyg + ddb.d_cyg + 1e-12);
            prop_assert!(dab.d_cyg_mod <= dad.d_cyg_mod + ddb.d_cyg_mod + 1e-12);
            let p = Pairing::default();
            let moved = cygan_distances(&g.mul(&a, p).unwrap(), &g.mul(&b, p).unwrap()).unwrap();
            prop_assert!((moved.d_cyg - dab.d_cyg).abs() < 1e-12 * (1.0 + dab.d_cyg));
        }

        #[test]
        fn depth_matches_level_maximum(a in arb_point(2), b in arb_point(2)) {
            prop_assume!(cygan_distances(&a, &b).unwrap().d_cyg > 1e-3);
            let h = horoball_depth_cc(&a, &b).unwrap();
            let s = level_max_numeric(&a, &b).unwrap();
            prop_assert!((s - h.s_star).abs() < 1e-9 * (1.0 + s));
        }
    }
}
