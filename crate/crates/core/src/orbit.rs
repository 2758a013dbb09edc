//! Certified enumeration of `E = Γ·{α₀, α₀^σ}` in complexity/window boxes.
//!
//! A point `r` of the orbit is the first root of exactly one primitive form
//! `(a, b, c)` of the discriminant `D` of `α₀`, and `h(r) = 2|a|/√D`.  So the
//! points with `h ≤ h_max` inside a window are found by scanning
//! `|a| ≤ h_max·√D/2`, solving for the `b` that put the root in the window,
//! and keeping the forms whose reduction lands on one of the accepted
//! ρ-cycles.  The scan kernel works on `i128` with checked arithmetic;
//! results cross the API boundary as exact big-integer values.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::io::{BufRead, Write};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive};
use rayon::prelude::*;
use thiserror::Error;

use crate::exactnum::{automorph_of_form, BQForm, ExactError, FormCycle, MoebiusMap, QuadSurd, DEFAULT_PELL_BITS};

pub const DEFAULT_A_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum OrbitError {
    #[error("enumeration needs |a| up to {needed}, above the budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("base point must be a real quadratic irrational over Q")]
    BadBase,
    #[error("integer overflow in the scan kernel")]
    Overflow,
    #[error("empty window [{0}, {1}]")]
    EmptyWindow(f64, f64),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("malformed cache line {line}: {msg}")]
    Cache { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Membership predicate on integer matrices `[a, b, c, d]`.
pub type Membership = Arc<dyn Fn([i128; 4]) -> bool + Send + Sync>;

/// The group `Γ` acting on the boundary.
#[derive(Clone)]
pub enum GroupSpec {
    Psl2z,
    /// Homographies and anti-homographies of `PGL₂(ℤ)`.
    Pgl2z,
    /// A finite-index subgroup of `PSL₂(ℤ)` given by a membership predicate.
    /// `stab_range` bounds the powers `k` of the base automorph tried when
    /// testing whether some transporter `γ·g₀^k` lies in the subgroup.
    FiniteIndex { name: String, member: Membership, generators: Vec<MoebiusMap>, stab_range: i64 },
}

impl GroupSpec {
    /// `Γ₀(N)`: lower-left entry divisible by `N`.
    pub fn gamma0(n: i64) -> Self {
        let nn = n as i128;
        let mut gens = vec![MoebiusMap::t()];
        gens.push(MoebiusMap::from_i64(1, 0, n, 1).unwrap());
        GroupSpec::FiniteIndex {
            name: format!("Gamma0({n})"),
            member: Arc::new(move |m: [i128; 4]| m[2].rem_euclid(nn) == 0),
            generators: gens,
            stab_range: 2 * n.max(1) + 2,
        }
    }

    pub fn name(&self) -> String {
        match self {
            GroupSpec::Psl2z => "PSL2(Z)".into(),
            GroupSpec::Pgl2z => "PGL2(Z)".into(),
            GroupSpec::FiniteIndex { name, .. } => name.clone(),
        }
    }
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// `(a, b, c)` over `i128`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct IForm {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

type IMat = [i128; 4];

fn imul(x: &IMat, y: &IMat) -> Option<IMat> {
    let m = |p: i128, q: i128, r: i128, s: i128| p.checked_mul(q)?.checked_add(r.checked_mul(s)?);
    Some([
        m(x[0], y[0], x[1], y[2])?,
        m(x[0], y[1], x[1], y[3])?,
        m(x[2], y[0], x[3], y[2])?,
        m(x[2], y[1], x[3], y[3])?,
    ])
}

fn iinv(x: &IMat) -> IMat {
    [x[3], -x[1], -x[2], x[0]]
}

pub(crate) fn isqrt_i128(n: i128) -> i128 {
    let mut s = (n as f64).sqrt() as i128;
    while s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= n {
        s += 1;
    }
    s
}

impl IForm {
    pub fn from_big(f: &BQForm) -> Option<Self> {
        Some(IForm { a: f.a.to_i128()?, b: f.b.to_i128()?, c: f.c.to_i128()? })
    }

    pub fn to_big(self) -> BQForm {
        BQForm { a: BigInt::from(self.a), b: BigInt::from(self.b), c: BigInt::from(self.c) }
    }

    pub(crate) fn is_reduced(&self, s: i128) -> bool {
        let ta = 2 * self.a.abs();
        self.b > 0 && self.b <= s && ta + self.b > s && ta - self.b <= s
    }

    /// ρ step; `None` on overflow.
    pub(crate) fn rho(&self, d: i128, s: i128) -> Option<(IForm, i128)> {
        let c = self.c;
        let two_c = 2 * c.abs();
        let nb = if c.abs() <= s {
            s - (s + self.b).rem_euclid(two_c)
        } else {
            let lo = 1 - c.abs();
            (-self.b - lo).rem_euclid(two_c) + lo
        };
        let k = (nb + self.b) / (2 * c);
        let nc = (nb.checked_mul(nb)? - d) / (4 * c);
        Some((IForm { a: c, b: nb, c: nc }, k))
    }

    pub(crate) fn reduce(&self, d: i128, s: i128) -> Option<IForm> {
        let mut f = *self;
        let mut guard = 0;
        while !f.is_reduced(s) {
            f = f.rho(d, s)?.0;
            guard += 1;
            if guard > 10_000 {
                return None;
            }
        }
        Some(f)
    }

    /// Reduce while recording `U` with `U·ω_self = ω_reduced`.
    fn reduce_with_matrix(&self, d: i128, s: i128) -> Option<(IForm, IMat)> {
        let mut f = *self;
        let mut u: IMat = [1, 0, 0, 1];
        while !f.is_reduced(s) {
            let (g, k) = f.rho(d, s)?;
            u = imul(&[-k, -1, 1, 0], &u)?;
            f = g;
        }
        Some((f, u))
    }
}

/// One element of the orbit.
#[derive(Clone, Debug)]
pub struct OrbitElement {
    pub value: QuadSurd,
    pub sigma: QuadSurd,
    pub h: f64,
    pub h_sq: BigRational,
    pub form: BQForm,
    /// `w` with `w·α₀ = value` (or `w·α₀^σ = value` when `from_conjugate`).
    pub witness: Option<(MoebiusMap, bool)>,
}

impl OrbitElement {
    /// Depth `D(r) = log h(r)` of the axis below the unit horoball.
    pub fn depth(&self) -> Depth {
        depth_from_h(self.h)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Depth {
    pub value: f64,
    /// `D ≤ 0`: the axis meets the horoball, so `D` is not a distance.
    pub meets_horoball: bool,
}

pub fn depth_from_h(h: f64) -> Depth {
    let value = h.ln();
    Depth { value, meets_horoball: value <= 0.0 }
}

/// `D(r) = log h(r)` for any quadratic irrational.
pub fn depth_d(r: &QuadSurd) -> Result<Depth, ExactError> {
    Ok(depth_from_h(r.complexity_h()?.value))
}

/// Light-weight orbit element produced by the scan kernel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RawElem {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub value: f64,
    pub h: f64,
}

impl RawElem {
    pub fn form(&self) -> BQForm {
        IForm { a: self.a, b: self.b, c: self.c }.to_big()
    }

    pub fn value_exact(&self) -> QuadSurd {
        self.form().first_root()
    }
}

/// A seed of an accepted class: its cycle, the map sending the base point
/// (or its conjugate) to the seed's first root, and which one it starts from.
#[derive(Clone)]
struct Seed {
    form: BQForm,
    map: MoebiusMap,
    from_conjugate: bool,
}

/// Reusable scanner for one base point and group.
#[derive(Clone)]
pub struct OrbitScanner {
    pub alpha0: QuadSurd,
    pub base_form: BQForm,
    pub group: GroupSpec,
    pub budget_a: u64,
    d: i128,
    s: i128,
    sqrt_d: f64,
    accepted: HashSet<IForm>,
    seeds: Vec<Seed>,
    automorph: IMat,
}

impl OrbitScanner {
    pub fn new(alpha0: &QuadSurd, group: GroupSpec) -> Result<Self, OrbitError> {
        if !alpha0.is_real() || !alpha0.is_irrational() {
            return Err(OrbitError::BadBase);
        }
        let base_form = alpha0.form()?;
        let d = base_form.disc().to_i128().ok_or(OrbitError::Overflow)?;
        let s = isqrt_i128(d);
        let id = MoebiusMap::identity();
        let mut seeds = vec![
            Seed { form: base_form.clone(), map: id.clone(), from_conjugate: false },
            Seed { form: base_form.neg(), map: id, from_conjugate: true },
        ];
        if matches!(group, GroupSpec::Pgl2z) {
            let j = MoebiusMap::j();
            seeds.push(Seed { form: base_form.act(&j)?, map: j.clone(), from_conjugate: false });
            seeds.push(Seed { form: base_form.neg().act(&j)?, map: j, from_conjugate: true });
        }
        let mut accepted = HashSet::new();
        for sd in &seeds {
            for f in sd.form.cycle().forms {
                accepted.insert(IForm::from_big(&f).ok_or(OrbitError::Overflow)?);
            }
        }
        let g0 = automorph_of_form(&base_form, DEFAULT_PELL_BITS)?;
        let e = g0.int_entries()?;
        let automorph = [
            e[0].to_i128().ok_or(OrbitError::Overflow)?,
            e[1].to_i128().ok_or(OrbitError::Overflow)?,
            e[2].to_i128().ok_or(OrbitError::Overflow)?,
            e[3].to_i128().ok_or(OrbitError::Overflow)?,
        ];
        Ok(OrbitScanner {
            alpha0: alpha0.clone(),
            base_form,
            group,
            budget_a: DEFAULT_A_BUDGET,
            d,
            s,
            sqrt_d: (d as f64).sqrt(),
            accepted,
            seeds,
            automorph,
        })
    }

    pub fn with_budget(mut self, budget_a: u64) -> Self {
        self.budget_a = budget_a;
        self
    }

    pub fn disc(&self) -> i128 {
        self.d
    }

    pub fn sqrt_disc(&self) -> f64 {
        self.sqrt_d
    }

    /// Largest `|a|` needed for complexity `h_max`.
    pub fn a_max(&self, h_max: f64) -> Result<i128, OrbitError> {
        let a = (h_max * self.sqrt_d / 2.0).floor();
        if a > self.budget_a as f64 {
            return Err(OrbitError::BudgetExceeded { needed: a as u64, budget: self.budget_a });
        }
        Ok(a as i128)
    }

    /// The class cycles accepted as `E` (for display and exclusion).
    pub fn accepted_cycles(&self) -> Vec<FormCycle> {
        let mut out: Vec<FormCycle> = Vec::new();
        for sd in &self.seeds {
            let c = sd.form.cycle();
            if !out.iter().any(|o| o.same_as(&c)) {
                out.push(c);
            }
        }
        out
    }

    fn in_accepted_class(&self, f: IForm) -> Option<bool> {
        Some(self.accepted.contains(&f.reduce(self.d, self.s)?))
    }

    /// Transporter-based membership for finite-index subgroups.
    fn in_subgroup(&self, f: IForm, member: &Membership, stab_range: i64) -> Option<bool> {
        let (r, u) = f.reduce_with_matrix(self.d, self.s)?;
        for seed in self.seeds.iter().take(2) {
            let sf = IForm::from_big(&seed.form)?;
            let (r0, u0) = sf.reduce_with_matrix(self.d, self.s)?;
            // walk the cycle from r0 to r
            let mut g = r0;
            let mut v: IMat = [1, 0, 0, 1];
            let mut found = false;
            loop {
                if g == r {
                    found = true;
                    break;
                }
                let (h, k) = g.rho(self.d, self.s)?;
                v = imul(&[-k, -1, 1, 0], &v)?;
                g = h;
                if g == r0 {
                    break;
                }
            }
            if !found {
                continue;
            }
            let gamma = imul(&imul(&iinv(&u), &v)?, &u0)?;
            // transporters from the base point: γ·g₀^k
            let mut p: IMat = gamma;
            let mut q: IMat = gamma;
            let ginv = iinv(&self.automorph);
            for _ in 0..=stab_range {
                if member(p) || member(q) {
                    return Some(true);
                }
                p = imul(&p, &self.automorph)?;
                q = imul(&q, &ginv)?;
            }
        }
        Some(false)
    }

    /// Is the primitive form `f` (with first root `r`) the form of a point of `E`?
    pub(crate) fn accepts(&self, f: IForm) -> Result<bool, OrbitError> {
        let in_class = self.in_accepted_class(f).ok_or(OrbitError::Overflow)?;
        if !in_class {
            return Ok(false);
        }
        match &self.group {
            GroupSpec::FiniteIndex { member, stab_range, .. } => {
                self.in_subgroup(f, member, *stab_range).ok_or(OrbitError::Overflow)
            }
            _ => Ok(true),
        }
    }

    /// Membership of an arbitrary real quadratic irrational in `E`.
    pub fn contains(&self, x: &QuadSurd) -> Result<bool, OrbitError> {
        if !x.is_irrational() || !x.is_real() {
            return Ok(false);
        }
        let f = x.form()?;
        if f.disc().to_i128() != Some(self.d) {
            return Ok(false);
        }
        self.accepts(IForm::from_big(&f).ok_or(OrbitError::Overflow)?)
    }

    fn first_root_f64(&self, a: i128, b: i128, c: i128) -> f64 {
        // (−b+√D)/(2a) = −2c/(b+√D) avoids cancellation for b > 0
        if b > 0 {
            -2.0 * c as f64 / (b as f64 + self.sqrt_d)
        } else {
            (-(b as f64) + self.sqrt_d) / (2.0 * a as f64)
        }
    }

    /// Exact test `lo ≤ (−b+√D)/(2a) ≤ hi`, used only near the window edges.
    fn root_in_exact(&self, f: IForm, lo: f64, hi: f64) -> bool {
        let r = f.to_big().first_root();
        let ge = |t: f64| -> bool {
            match BigRational::from_f64(t) {
                Some(q) => {
                    let t = QuadSurd::from_scalar(crate::exactnum::BaseScalar::rational(q));
                    r.cmp_real(&t).map(|o| o != std::cmp::Ordering::Less).unwrap_or(false)
                }
                None => t == f64::NEG_INFINITY,
            }
        };
        let le = |t: f64| -> bool {
            match BigRational::from_f64(t) {
                Some(q) => {
                    let t = QuadSurd::from_scalar(crate::exactnum::BaseScalar::rational(q));
                    r.cmp_real(&t).map(|o| o != std::cmp::Ordering::Greater).unwrap_or(false)
                }
                None => t == f64::INFINITY,
            }
        };
        ge(lo) && le(hi)
    }

    /// All elements with first coefficient `a` whose root lies in `[lo, hi]`.
    fn scan_a(&self, a: i128, lo: f64, hi: f64, out: &mut Vec<RawElem>) -> Result<(), OrbitError> {
        let sd = self.sqrt_d;
        let two_a = 2.0 * a.abs() as f64;
        // root = (−b+√D)/(2a) ∈ [lo, hi]
        let (bl, bh) = if a > 0 { (sd - two_a * hi, sd - two_a * lo) } else { (two_a * lo + sd, two_a * hi + sd) };
        if !(bl.is_finite() && bh.is_finite()) || bh.abs().max(bl.abs()) > 1e30 {
            return Err(OrbitError::Overflow);
        }
        let mut b = bl.floor() as i128 - 2;
        let b_end = bh.ceil() as i128 + 2;
        let par = self.d.rem_euclid(2);
        if b.rem_euclid(2) != par {
            b += 1;
        }
        let four_a = 4 * a;
        let h = two_a / sd;
        let tol = 1e-12 * (1.0 + lo.abs().max(hi.abs()));
        while b <= b_end {
            let num = b.checked_mul(b).ok_or(OrbitError::Overflow)? - self.d;
            if num % four_a == 0 {
                let c = num / four_a;
                if gcd3(a, b, c) == 1 {
                    let v = self.first_root_f64(a, b, c);
                    let near = (v - lo).abs() < tol || (v - hi).abs() < tol;
                    let inside = if near {
                        self.root_in_exact(IForm { a, b, c }, lo, hi)
                    } else {
                        v >= lo && v <= hi
                    };
                    if inside && self.accepts(IForm { a, b, c })? {
                        out.push(RawElem { a, b, c, value: v, h });
                    }
                }
            }
            b += 2;
        }
        Ok(())
    }

    /// Elements with `h_min ≤ h ≤ h_max` in `[lo, hi]`, sorted by `(h, value)`.
    pub fn scan_window(&self, h_min: f64, h_max: f64, lo: f64, hi: f64) -> Result<Vec<RawElem>, OrbitError> {
        if !(lo <= hi) {
            return Err(OrbitError::EmptyWindow(lo, hi));
        }
        let a_max = self.a_max(h_max)?;
        let a_min = ((h_min * self.sqrt_d / 2.0).ceil() as i128).max(1);
        self.scan_with(a_min, a_max, |_| (lo, hi))
    }

    /// Scan `a_min ≤ |a| ≤ a_max` with a per-`|a|` window.
    pub fn scan_with<F>(&self, a_min: i128, a_max: i128, window: F) -> Result<Vec<RawElem>, OrbitError>
    where
        F: Fn(i128) -> (f64, f64) + Sync,
    {
        if a_max < a_min {
            return Ok(Vec::new());
        }
        let chunk = 256i128;
        let starts: Vec<i128> = (0..=((a_max - a_min) / chunk)).map(|k| a_min + k * chunk).collect();
        let parts: Result<Vec<Vec<RawElem>>, OrbitError> = starts
            .par_iter()
            .map(|&st| {
                let mut out = Vec::new();
                for aa in st..(st + chunk).min(a_max + 1) {
                    let (lo, hi) = window(aa);
                    if lo > hi {
                        continue;
                    }
                    self.scan_a(aa, lo, hi, &mut out)?;
                    self.scan_a(-aa, lo, hi, &mut out)?;
                }
                Ok(out)
            })
            .collect();
        let mut all: Vec<RawElem> = parts?.into_iter().flatten().collect();
        all.sort_by(|x, y| x.a.abs().cmp(&y.a.abs()).then(x.value.total_cmp(&y.value)).then(x.a.cmp(&y.a)));
        Ok(all)
    }

    /// Exact witness `w` with `w·α₀ = value` (or from `α₀^σ`).
    pub fn witness(&self, f: &BQForm) -> Option<(MoebiusMap, bool)> {
        for sd in &self.seeds {
            if let Some(w) = sd.form.equivalence_witness(f) {
                let g = w.compose(&sd.map);
                if let GroupSpec::FiniteIndex { member, stab_range, .. } = &self.group {
                    let g0 = automorph_of_form(&self.base_form, DEFAULT_PELL_BITS).ok()?;
                    for k in 0..=*stab_range {
                        for kk in [k, -k] {
                            let cand = g.compose(&g0.pow(kk));
                            let e = cand.int_entries().ok()?;
                            let m = [e[0].to_i128()?, e[1].to_i128()?, e[2].to_i128()?, e[3].to_i128()?];
                            if member(m) {
                                return Some((cand, sd.from_conjugate));
                            }
                        }
                    }
                    continue;
                }
                return Some((g, sd.from_conjugate));
            }
        }
        None
    }

    pub fn to_element(&self, r: &RawElem, with_witness: bool) -> OrbitElement {
        let form = r.form();
        let value = form.first_root();
        let sigma = value.galois_conjugate();
        let h_sq = BigRational::new(BigInt::from(4) * BigInt::from(r.a) * BigInt::from(r.a), BigInt::from(self.d));
        let witness = if with_witness { self.witness(&form) } else { None };
        OrbitElement { value, sigma, h: r.h, h_sq, form, witness }
    }
}

pub(crate) fn gcd3(a: i128, b: i128, c: i128) -> i128 {
    fn g(mut x: i128, mut y: i128) -> i128 {
        x = x.abs();
        y = y.abs();
        while y != 0 {
            let t = x % y;
            x = y;
            y = t;
        }
        x
    }
    g(g(a, b), c)
}

/// Every orbit element with `h ≤ h_max` in `[lo, hi]`, sorted by `(h, value)`.
pub fn enumerate_orbit_window(
    alpha0: &QuadSurd,
    group: &GroupSpec,
    h_max: f64,
    window: (f64, f64),
    budget_a: u64,
    with_witness: bool,
) -> Result<Vec<OrbitElement>, OrbitError> {
    let sc = OrbitScanner::new(alpha0, group.clone())?.with_budget(budget_a);
    let raw = sc.scan_window(0.0, h_max, window.0, window.1)?;
    Ok(raw.iter().map(|r| sc.to_element(r, with_witness)).collect())
}

/// Budget for hyperbolic fixed-point enumeration.
#[derive(Clone, Debug, Default)]
pub struct HypBudget {
    /// Enumerate every class of discriminant up to this bound.
    pub max_disc: u64,
    /// Additional explicit points (e.g. fixed points of chosen elements).
    pub extra: Vec<QuadSurd>,
}

/// Reduced forms of discriminant `d`, grouped into ρ-cycles.
pub fn classes_of_disc(d: i128) -> Vec<Vec<BQForm>> {
    let s = isqrt_i128(d);
    if s * s == d || d <= 0 || !(d.rem_euclid(4) == 0 || d.rem_euclid(4) == 1) {
        return Vec::new();
    }
    let mut seen: HashSet<IForm> = HashSet::new();
    let mut out = Vec::new();
    let mut b = if s.rem_euclid(2) == d.rem_euclid(2) { s } else { s - 1 };
    while b > 0 {
        let n = (b * b - d) / 4; // = ac < 0
        for a in 1..=n.abs() {
            if n % a != 0 {
                continue;
            }
            for (aa, cc) in [(a, n / a), (-a, -n / a)] {
                let f = IForm { a: aa, b, c: cc };
                if !f.is_reduced(s) || gcd3(aa, b, cc) != 1 || seen.contains(&f) {
                    continue;
                }
                let mut cyc = vec![f];
                seen.insert(f);
                let mut g = f.rho(d, s).unwrap().0;
                while g != f {
                    seen.insert(g);
                    cyc.push(g);
                    g = g.rho(d, s).unwrap().0;
                }
                let mut forms: Vec<BQForm> = cyc.into_iter().map(|x| x.to_big()).collect();
                let kpos = forms.iter().enumerate().min_by(|x, y| x.1.cmp(y.1)).map(|(i, _)| i).unwrap();
                forms.rotate_left(kpos);
                out.push(forms);
            }
        }
        b -= 2;
    }
    out.sort();
    out
}

/// One hyperbolic fixed point per primitive class not in `E`.
///
/// For every discriminant up to `budget.max_disc`, one representative per
/// ρ-cycle (the first root of its least form) is produced, skipping the
/// classes of `excluded` (the scanner's accepted cycles); explicit extra
/// points follow.  Each emitted point is certified by its automorph.
pub fn enumerate_hyperbolic_points(excluded: &OrbitScanner, budget: &HypBudget) -> Result<Vec<QuadSurd>, OrbitError> {
    let mut out = Vec::new();
    let mut d = 5i128;
    while d <= budget.max_disc as i128 {
        for cyc in classes_of_disc(d) {
            let f = IForm::from_big(&cyc[0]).ok_or(OrbitError::Overflow)?;
            if d == excluded.d && excluded.accepted.contains(&f) {
                continue;
            }
            let x = cyc[0].first_root();
            if let GroupSpec::FiniteIndex { .. } = excluded.group {
                if excluded.contains(&x)? {
                    continue;
                }
            }
            let g = crate::exactnum::automorph_of(&x)?;
            debug_assert_eq!(g.apply_surd(&x)?, x);
            out.push(x);
        }
        d += 1;
    }
    for x in &budget.extra {
        if excluded.contains(x)? {
            continue;
        }
        let g = crate::exactnum::automorph_of(x)?;
        if g.apply_surd(x)? != *x {
            return Err(OrbitError::BadBase);
        }
        out.push(x.clone());
    }
    Ok(out)
}

/// Breadth-first orbit exploration by the words in `x ↦ x ± 1`, `x ↦ −1/x`
/// (exact, deduplicated).  Kept as an independent cross-check.
pub fn orbit_by_words(alpha0: &QuadSurd, depth: usize) -> HashSet<QuadSurd> {
    let gens = [MoebiusMap::t(), MoebiusMap::t().inverse(), MoebiusMap::s()];
    let mut seen: HashSet<QuadSurd> = HashSet::new();
    let mut q = VecDeque::new();
    for x in [alpha0.clone(), alpha0.galois_conjugate()] {
        if seen.insert(x.clone()) {
            q.push_back((x, 0usize));
        }
    }
    while let Some((x, k)) = q.pop_front() {
        if k == depth {
            continue;
        }
        for g in &gens {
            if let Ok(y) = g.apply_surd(&x) {
                if seen.insert(y.clone()) {
                    q.push_back((y, k + 1));
                }
            }
        }
    }
    seen
}

/// Write an orbit cache: a `#` header, then `h<TAB>value<TAB>(a,b,c)` by `h`.
pub fn write_cache<W: Write>(mut w: W, header: &str, elems: &[OrbitElement]) -> Result<(), OrbitError> {
    writeln!(w, "# {header}")?;
    for e in elems {
        writeln!(w, "{:.17e}\t{}\t{}", e.h, e.value.to_text(), e.form)?;
    }
    Ok(())
}

/// Read a cache written by [`write_cache`]; the header line is returned.
pub fn read_cache<R: BufRead>(r: R) -> Result<(String, Vec<OrbitElement>), OrbitError> {
    let mut header = String::new();
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if let Some(h) = line.strip_prefix('#') {
            header = h.trim().to_string();
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let bad = |msg: &str| OrbitError::Cache { line: i + 1, msg: msg.to_string() };
        let parts: Vec<&str> = line.split('\t').collect();
        if parts.len() != 3 {
            return Err(bad("expected three tab-separated fields"));
        }
        let h: f64 = parts[0].parse().map_err(|_| bad("bad h"))?;
        let value = QuadSurd::parse(parts[1])?;
        let coeffs: Vec<BigInt> = parts[2]
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|t| t.trim().parse::<BigInt>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad("bad form"))?;
        if coeffs.len() != 3 {
            return Err(bad("bad form"));
        }
        let form = BQForm::new(coeffs[0].clone(), coeffs[1].clone(), coeffs[2].clone())?;
        if form.first_root() != value {
            return Err(bad("value is not the first root of the form"));
        }
        let h_sq = BigRational::new(BigInt::from(4) * &form.a * &form.a, form.disc());
        let sigma = value.galois_conjugate();
        out.push(OrbitElement { value, sigma, h, h_sq, form, witness: None });
    }
    Ok((header, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> OrbitScanner {
        OrbitScanner::new(&QuadSurd::golden(), GroupSpec::Psl2z).unwrap()
    }

    #[test]
    fn small_golden_window() {
        let els = enumerate_orbit_window(&QuadSurd::golden(), &GroupSpec::Psl2z, 1.0, (0.0, 1.0), 1000, true).unwrap();
        let inv_phi = QuadSurd::from_ints(-1, 1, 5, 2).unwrap();
        assert!(els.iter().any(|e| e.value == inv_phi));
        for e in &els {
            let (w, conj) = e.witness.clone().unwrap();
            let base = if conj { QuadSurd::golden().galois_conjugate() } else { QuadSurd::golden() };
            assert_eq!(w.apply_surd(&base).unwrap(), e.value);
        }
    }

    #[test]
    fn contains_shifted_golden() {
        let els = enumerate_orbit_window(&QuadSurd::golden(), &GroupSpec::Psl2z, 5.0, (0.0, 1.0), 1000, false).unwrap();
        let x = QuadSurd::from_ints(5, 1, 5, 10).unwrap(); // (φ+1)/(φ+2) = (5+√5)/10
        let e = els.iter().find(|e| e.value == x).expect("present");
        assert!((e.h - 2.0 * 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(e.form, BQForm::from_i64(5, -5, 1).unwrap());
    }

    #[test]
    fn budget_monotone() {
        let sc = golden();
        let small = sc.scan_window(0.0, 6.0, 0.0, 1.0).unwrap();
        let big = sc.scan_window(0.0, 12.0, 0.0, 1.0).unwrap();
        assert!(big.len() > small.len());
        for e in &small {
            assert!(big.contains(e));
        }
    }

    #[test]
    fn budget_error() {
        let sc = golden().with_budget(10);
        assert!(matches!(sc.scan_window(0.0, 100.0, 0.0, 1.0), Err(OrbitError::BudgetExceeded { .. })));
    }

    #[test]
    fn depths() {
        let d = depth_d(&QuadSurd::golden()).unwrap();
        assert!((d.value - (2.0 / 5f64.sqrt()).ln()).abs() < 1e-15);
        assert!(d.meets_horoball);
        let x = QuadSurd::from_ints(5, 1, 5, 10).unwrap();
        let d = depth_d(&x).unwrap();
        assert!((d.value - 1.4978661367769954).abs() < 1e-12);
        assert!(!d.meets_horoball);
        assert_eq!(depth_d(&x.galois_conjugate()).unwrap(), d);
    }

    #[test]
    fn membership() {
        let sc = golden();
        assert!(sc.contains(&QuadSurd::golden()).unwrap());
        assert!(sc.contains(&QuadSurd::from_ints(5, 1, 5, 10).unwrap()).unwrap());
        assert!(!sc.contains(&QuadSurd::sqrt_int(2).unwrap()).unwrap());
        // all primitive disc-5 forms are golden; √5 has disc 20
        assert!(!sc.contains(&QuadSurd::sqrt_int(5).unwrap()).unwrap());
    }

    #[test]
    fn disc_classes() {
        assert_eq!(classes_of_disc(5).len(), 1);
        assert_eq!(classes_of_disc(12).len(), 2);
        assert!(classes_of_disc(9).is_empty());
    }

    #[test]
    fn hyperbolic_points_skip_golden() {
        let sc = golden();
        let pts = enumerate_hyperbolic_points(&sc, &HypBudget { max_disc: 13, extra: vec![] }).unwrap();
        assert!(!pts.is_empty());
        for p in &pts {
            assert!(!sc.contains(p).unwrap());
        }
        // disc 8 is present: the class of √2
        let r2 = QuadSurd::sqrt_int(2).unwrap().form().unwrap();
        assert!(pts.iter().any(|p| p.form().unwrap().disc() == r2.disc()));
    }

    #[test]
    fn cache_roundtrip() {
        let els = enumerate_orbit_window(&QuadSurd::golden(), &GroupSpec::Psl2z, 8.0, (0.0, 1.0), 1000, false).unwrap();
        let mut buf = Vec::new();
        write_cache(&mut buf, "alpha=golden", &els).unwrap();
        let (hdr, back) = read_cache(std::io::Cursor::new(buf)).unwrap();
        assert_eq!(hdr, "alpha=golden");
        assert_eq!(back.len(), els.len());
        for (a, b) in els.iter().zip(&back) {
            assert_eq!(a.value, b.value);
            assert_eq!(a.h, b.h);
        }
    }

    #[test]
    fn gamma0_splits_the_class() {
        // the golden class splits into several Γ₀(5)-orbits; φ and φ^σ reach only some
        let full = enumerate_orbit_window(&QuadSurd::golden(), &GroupSpec::Psl2z, 10.0, (0.0, 1.0), 1000, false).unwrap();
        let sub = enumerate_orbit_window(&QuadSurd::golden(), &GroupSpec::gamma0(5), 10.0, (0.0, 1.0), 1000, true).unwrap();
        assert!(sub.len() < full.len());
        for e in &sub {
            let (w, conj) = e.witness.clone().expect("witness in Γ₀(5)");
            let m = w.entries_i64().unwrap();
            assert_eq!(m[2].rem_euclid(5), 0);
            let base = if conj { QuadSurd::golden().galois_conjugate() } else { QuadSurd::golden() };
            assert_eq!(w.apply_surd(&base).unwrap(), e.value);
        }
    }
}
