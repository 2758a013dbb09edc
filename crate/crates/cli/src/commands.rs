//! Subcommand implementations.

use std::fs::File;
use std::io::BufReader;

use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use qspectra::chc::{self, ChcError, HeisOp, HeisPoint, Pairing};
use qspectra::exactnum::{automorph_of, Classification, ExactError, Ext};
use qspectra::hgeom::GeomError;
use qspectra::khintchine::{self, IntegralBounds, KhintchineError, Phi, Verdict};
use qspectra::orbit::{self, HypBudget, OrbitError, OrbitScanner, DEFAULT_A_BUDGET};
use qspectra::penetration::{self, Gauge, PenetrationConfig, PenetrationError};
use qspectra::spectrum::{self, HurwitzCase, SpectrumError};

use crate::input;
use crate::{Format, Global};

/// A failed run: message for stderr and the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn budget(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
}

impl From<ExactError> for Failure {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::PellBudget { .. } => Failure::budget(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<OrbitError> for Failure {
    fn from(e: OrbitError) -> Self {
        match e {
            OrbitError::BudgetExceeded { .. } => Failure::budget(e.to_string()),
            OrbitError::Exact(x) => x.into(),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<SpectrumError> for Failure {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::Orbit(x) => x.into(),
            SpectrumError::Exact(x) => x.into(),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<PenetrationError> for Failure {
    fn from(e: PenetrationError) -> Self {
        match e {
            PenetrationError::TimeBudget(_) => Failure::budget(e.to_string()),
            PenetrationError::Orbit(x) => x.into(),
            PenetrationError::Exact(x) => x.into(),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<ChcError> for Failure {
    fn from(e: ChcError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<KhintchineError> for Failure {
    fn from(e: KhintchineError) -> Self {
        match e {
            KhintchineError::Orbit(x) => x.into(),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

/// What a subcommand produced.
pub struct Output {
    pub json: Value,
    pub csv: Option<String>,
    pub text: String,
    pub plot: Vec<(f64, f64)>,
    pub code: u8,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Output { json, csv: None, text, plot: Vec::new(), code: 0 }
    }

    fn csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    fn plot(mut self, plot: Vec<(f64, f64)>) -> Self {
        self.plot = plot;
        self
    }

    fn inconclusive_if(mut self, flag: bool) -> Self {
        if flag {
            self.code = 4;
        }
        self
    }

    pub fn render(&self, f: Format) -> String {
        match f {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("JSON values always serialise") + "\n",
            Format::Text => self.text.clone(),
            Format::Csv => match &self.csv {
                Some(c) => c.clone(),
                None => flat_csv(&self.json),
            },
        }
    }
}

/// `key,value` rows for the scalar fields of a JSON object.
fn flat_csv(v: &Value) -> String {
    let mut s = String::from("key,value\n");
    if let Value::Object(m) = v {
        for (k, x) in m {
            match x {
                Value::Object(_) | Value::Array(_) => s.push_str(&format!("{k},{}\n", x.to_string().replace(',', ";"))),
                Value::String(t) => s.push_str(&format!("{k},{t}\n")),
                _ => s.push_str(&format!("{k},{x}\n")),
            }
        }
    }
    s
}

fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

// ---------------------------------------------------------------------------

#[derive(Args, Debug)]
pub struct OrbitArgs {
    /// Base point α₀ (surd, `golden` or `sqrt2`).
    #[arg(long, default_value = "golden")]
    pub alpha: String,
    /// psl2z, pgl2z or gamma0(N).
    #[arg(long, default_value = "psl2z")]
    pub group: String,
    /// Largest |a| the scan may reach.
    #[arg(long, default_value_t = DEFAULT_A_BUDGET)]
    pub budget: u64,
    /// Attach a group element carrying α₀ to each point.
    #[arg(long)]
    pub witness: bool,
}

pub fn orbit(g: &Global, a: OrbitArgs) -> Result<Output, Failure> {
    let alpha = input::surd(&a.alpha)?;
    let group = input::group(&a.group)?;
    let h_max = g.h_max.unwrap_or(100.0);
    let window = input::window(g.window.as_deref().unwrap_or("0:1"))?;
    let header = format!("alpha={} group={} h_max={} window={}:{}", alpha.to_text(), group.name(), h_max, window.0, window.1);
    let cached = match &g.cache {
        Some(p) if p.exists() => {
            let (h, elems) = orbit::read_cache(BufReader::new(File::open(p)?))?;
            (h == header && !a.witness).then_some(elems)
        }
        _ => None,
    };
    let elems = match cached {
        Some(e) => e,
        None => {
            let e = orbit::enumerate_orbit_window(&alpha, &group, h_max, window, a.budget, a.witness)?;
            if let Some(p) = &g.cache {
                orbit::write_cache(File::create(p)?, &header, &e)?;
            }
            e
        }
    };
    let rows: Vec<Value> = elems
        .iter()
        .map(|e| {
            let mut r = json!({
                "value": e.value.to_text(),
                "x": e.value.to_f64(),
                "h": e.h,
                "form": e.form.to_string(),
            });
            if let Some((w, conj)) = &e.witness {
                r["witness"] = json!(w.to_string());
                r["from_conjugate"] = json!(conj);
            }
            r
        })
        .collect();
    let mut csv = String::from("h,x,value,a,b,c\n");
    let mut text = String::new();
    for e in &elems {
        csv.push_str(&format!("{},{},{},{},{},{}\n", e.h, e.value.to_f64(), e.value.to_text(), e.form.a, e.form.b, e.form.c));
        text.push_str(&format!("h={:.6} x={:.12} {} {}\n", e.h, e.value.to_f64(), e.value, e.form));
    }
    let plot = elems.iter().map(|e| (e.value.to_f64(), e.h)).collect();
    let json = json!({
        "alpha": alpha.to_text(),
        "group": group.name(),
        "h_max": h_max,
        "window": [window.0, window.1],
        "count": elems.len(),
        "elements": rows,
    });
    Ok(Output::new(json, text).csv(csv).plot(plot))
}

// ---------------------------------------------------------------------------

#[derive(Args, Debug)]
pub struct FixArgs {
    /// Integer matrix `a,b,c,d` to classify.
    #[arg(long, conflicts_with = "alpha", required_unless_present = "alpha")]
    pub matrix: Option<String>,
    /// Quadratic irrational whose primitive automorph is wanted.
    #[arg(long)]
    pub alpha: Option<String>,
}

fn ext_text(e: &Ext) -> String {
    match e {
        Ext::Inf => "inf".into(),
        Ext::Fin(x) => x.to_text(),
    }
}

pub fn fix(_g: &Global, a: FixArgs) -> Result<Output, Failure> {
    let (m, alpha) = match (&a.matrix, &a.alpha) {
        (Some(m), _) => (input::matrix(m)?, None),
        (None, Some(s)) => {
            let x = input::surd(s)?;
            (automorph_of(&x)?, Some(x.to_text()))
        }
        (None, None) => return Err(Failure::usage("either --matrix or --alpha is required")),
    };
    let cls = m.classify()?;
    let (kind, fixed, length) = match &cls {
        Classification::Elliptic => ("elliptic", vec![], None),
        Classification::Parabolic { fixed } => ("parabolic", vec![ext_text(fixed)], None),
        Classification::Hyperbolic { repelling, attracting, length } => ("hyperbolic", vec![ext_text(repelling), ext_text(attracting)], Some(*length)),
    };
    let mut json = json!({
        "matrix": m.to_string(),
        "class": kind,
        "fixed_points": fixed,
        "translation_length": length.map(num).unwrap_or(Value::Null),
    });
    if let Some(x) = alpha {
        json["alpha"] = json!(x);
    }
    let text = format!("{} {} fixed={} length={}\n", m, kind, fixed.join(" "), length.map(|l| l.to_string()).unwrap_or_else(|| "-".into()));
    Ok(Output::new(json, text))
}

// ---------------------------------------------------------------------------

#[derive(Args, Debug)]
pub struct ApproxArgs {
    /// Target: a float, or a surd for exact input.
    #[arg(long)]
    pub x: String,
    #[arg(long, default_value = "golden")]
    pub alpha: String,
    #[arg(long, default_value = "psl2z")]
    pub group: String,
    /// Comma-separated thresholds (default 1, 10, …, h_max/10).
    #[arg(long)]
    pub grid: Option<String>,
}

pub fn approx(g: &Global, a: ApproxArgs) -> Result<Output, Failure> {
    let alpha = input::surd(&a.alpha)?;
    let group = input::group(&a.group)?;
    let target = input::target(&a.x)?;
    let h_max = g.h_max.unwrap_or(1e4);
    let grid = match &a.grid {
        Some(s) => s.split(',').map(|t| t.trim().parse::<f64>()).collect::<Result<Vec<_>, _>>().map_err(|_| Failure::usage("grid must be comma-separated numbers"))?,
        None => spectrum::default_grid(h_max),
    };
    let est = spectrum::approx_constant_estimate(target, &alpha, &group, &grid, h_max)?;
    let mut csv = String::from("threshold,tail_infimum\n");
    let mut text = String::new();
    for (t, v) in est.thresholds.iter().zip(&est.tail_infima) {
        csv.push_str(&format!("{t},{v}\n"));
        text.push_str(&format!("T={t} inf={v}\n"));
    }
    text.push_str(&format!("estimate={}\n", est.value()));
    let plot = est.thresholds.iter().copied().zip(est.tail_infima.iter().copied()).collect();
    let json = json!({
        "x": a.x,
        "alpha": alpha.to_text(),
        "group": group.name(),
        "h_max": h_max,
        "thresholds": est.thresholds,
        "tail_infima": est.tail_infima.iter().map(|&v| num(v)).collect::<Vec<_>>(),
        "estimate": num(est.value()),
    });
    Ok(Output::new(json, text).csv(csv).plot(plot))
}

// ---------------------------------------------------------------------------

#[derive(Args, Debug)]
pub struct PeriodicArgs {
    /// Periodic point ξ (a real quadratic irrational).
    #[arg(long)]
    pub xi: String,
    #[arg(long, default_value = "golden")]
    pub alpha: String,
    #[arg(long, default_value = "psl2z")]
    pub group: String,
}

pub fn periodic(_g: &Global, a: PeriodicArgs) -> Result<Output, Failure> {
    let xi = input::surd(&a.xi)?;
    let alpha = input::surd(&a.alpha)?;
    let group = input::group(&a.group)?;
    let s = spectrum::approx_constant_periodic(&xi, &alpha, &group)?;
    let r = s.record();
    let text = format!("xi={} disc={} c={} certified={} radius={}\n", r.xi, r.disc, r.c, r.certified, r.radius);
    let csv = format!("xi,disc,c,certified,radius\n{},{},{},{},{}\n", r.xi, r.disc, r.c, r.certified, r.radius);
    let json = serde_json::to_value(&r).expect("record serialises");
    Ok(Output::new(json, text).csv(csv).inconclusive_if(!r.certified))
}

// ---------------------------------------------------------------------------

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long, default_value = "golden")]
    pub alpha: String,
    #[arg(long, default_value = "psl2z")]
    pub group: String,
    /// Every class of discriminant up to this bound.
    #[arg(long = "max-disc", default_value_t = 200)]
    pub max_disc: u64,
    /// Additional periodic points.
    #[arg(long)]
    pub extra: Vec<String>,
}

pub fn spectrum(_g: &Global, a: SpectrumArgs) -> Result<Output, Failure> {
    let alpha = input::surd(&a.alpha)?;
    let group = input::group(&a.group)?;
    let extra = a.extra.iter().map(|s| input::surd(s)).collect::<Result<Vec<_>, _>>()?;
    let budget = HypBudget { max_disc: a.max_disc, extra };
    let samples = spectrum::spectrum_sample(&alpha, &group, &budget)?;
    let records: Vec<_> = samples.iter().map(|s| s.record()).collect();
    let mut csv = String::from("xi,disc,c,certified,radius\n");
    let mut text = String::new();
    for r in &records {
        csv.push_str(&format!("{},{},{},{},{}\n", r.xi, r.disc, r.c, r.certified, r.radius));
        text.push_str(&format!("{} disc={} c={:.9}{}\n", r.xi, r.disc, r.c, if r.certified { "" } else { " (uncertified)" }));
    }
    let plot = records.iter().map(|r| (r.disc as f64, r.c)).collect();
    let all_certified = records.iter().all(|r| r.certified);
    let json = json!({
        "alpha": alpha.to_text(),
        "group": group.name(),
        "max_disc": a.max_disc,
        "samples": records,
    });
    Ok(Output::new(json, text).csv(csv).plot(plot).inconclusive_if(!all_certified))
}

// ---------------------------------------------------------------------------

#[derive(Args, Debug)]
pub struct HurwitzArgs {
    /// psl2z, modular_torus, bianchi(m), hurwitz_h5, eisenstein_picard.
    #[arg(long, required_unless_present = "all")]
    pub case: Option<String>,
    /// Print every catalog entry.
    #[arg(long)]
    pub all: bool,
}

pub fn hurwitz(_g: &Global, a: HurwitzArgs) -> Result<Output, Failure> {
    let cases: Vec<(String, HurwitzCase)> = if a.all {
        spectrum::catalog_cases().into_iter().map(|(n, c)| (n.to_string(), c)).collect()
    } else {
        let name = a.case.unwrap_or_default();
        let case: HurwitzCase = name.parse().map_err(|e: SpectrumError| Failure::usage(e.to_string()))?;
        vec![(name, case)]
    };
    let mut rows = Vec::new();
    let mut csv = String::from("case,value\n");
    let mut text = String::new();
    for (name, case) in cases {
        let v = spectrum::hurwitz_bounds_catalog(case)?;
        rows.push(json!({"case": name, "value": v}));
        csv.push_str(&format!("{name},{v}\n"));
        if a.all {
            text.push_str(&format!("{name} {v:.6}\n"));
        } else {
            text.push_str(&format!("{v:.6}\n"));
        }
    }
    let json = if a.all { json!({ "cases": rows }) } else { rows.pop().expect("one case") };
    Ok(Output::new(json, text).csv(csv))
}

// ---------------------------------------------------------------------------

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum GaugeArg {
    Length,
    Ftp,
    Cp,
}

#[derive(Args, Debug)]
pub struct PenetrateArgs {
    /// Endpoint of the ray from ∞ (float or surd).
    #[arg(long, required_unless_present = "inequalities")]
    pub x: Option<String>,
    #[arg(long, default_value = "golden")]
    pub alpha: String,
    #[arg(long, default_value = "psl2z")]
    pub group: String,
    #[arg(long = "t-max", default_value_t = 30.0)]
    pub t_max: f64,
    #[arg(long, value_enum, default_value_t = GaugeArg::Ftp)]
    pub gauge: GaugeArg,
    /// Threshold δ (default 2 log(2+√5)).
    #[arg(long)]
    pub delta: Option<f64>,
    /// Gauge offset κ (default: the uniform bound of the gauge).
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Instead, test the gauge inequalities on this many random configurations.
    #[arg(long)]
    pub inequalities: Option<usize>,
}

pub fn penetrate(g: &Global, a: PenetrateArgs) -> Result<Output, Failure> {
    let eps = g.epsilon.unwrap_or(0.5 * 5f64.ln());
    if let Some(n) = a.inequalities {
        let r = penetration::check_penetration_inequalities(n, eps, g.seed)?;
        let text = format!(
            "samples={} eps={} max|ftp-ell|={} (bound {}) max|cp-ftp|={} (bound {}) violations={}\n",
            r.samples, r.eps, r.max_ftp_minus_ell, r.bound_ftp, r.max_cp_minus_ftp, r.bound_cp, r.violations
        );
        return Ok(Output::new(serde_json::to_value(&r).expect("report serialises"), text));
    }
    let x = a.x.as_deref().unwrap_or_default();
    let target = input::target(x)?;
    let alpha = input::surd(&a.alpha)?;
    let family = OrbitScanner::new(&alpha, input::group(&a.group)?)?;
    let gauge = match a.gauge {
        GaugeArg::Length => Gauge::Length,
        GaugeArg::Ftp => Gauge::Ftp,
        GaugeArg::Cp => Gauge::Cp,
    };
    let mut cfg = PenetrationConfig::new(eps, a.t_max, gauge);
    if let Some(d) = a.delta {
        cfg.delta = d;
    }
    if let Some(k) = a.kappa {
        cfg.kappa = k;
    }
    let events = penetration::penetration_sequence(&target, &family, &cfg)?;
    let rows: Vec<Value> = events
        .iter()
        .map(|e| {
            json!({
                "t_enter": e.t_enter,
                "t_exit": num(e.t_exit),
                "form": e.axis_form.to_string(),
                "value": num(e.value),
                "terminal": e.terminal,
            })
        })
        .collect();
    let mut text = String::new();
    for e in &events {
        text.push_str(&format!("t={:.6}..{:.6} {} value={}{}\n", e.t_enter, e.t_exit, e.axis_form, e.value, if e.terminal { " terminal" } else { "" }));
    }
    let plot = events.iter().filter(|e| e.value.is_finite()).map(|e| (e.t_enter, e.value)).collect();
    let json = json!({
        "x": x,
        "alpha": alpha.to_text(),
        "epsilon": eps,
        "delta": cfg.delta,
        "kappa": cfg.kappa,
        "gauge": format!("{gauge:?}").to_lowercase(),
        "t_max": cfg.t_max,
        "events": rows,
    });
    Ok(Output::new(json, text).csv(penetration::events_to_csv(&events)).plot(plot))
}

// ---------------------------------------------------------------------------

#[derive(Args, Debug)]
pub struct IntersectArgs {
    /// First geodesic `a:b`.
    #[arg(long)]
    pub l1: String,
    /// Second geodesic `a:b`.
    #[arg(long)]
    pub l2: String,
}

pub fn intersect(g: &Global, a: IntersectArgs) -> Result<Output, Failure> {
    let eps = g.epsilon.unwrap_or(0.5 * 5f64.ln());
    let (l1, l2) = (input::geodesic(&a.l1)?, input::geodesic(&a.l2)?);
    let d = penetration::neighborhood_intersection_diameter(&l1, &l2, eps)?;
    let json = json!({ "l1": a.l1, "l2": a.l2, "epsilon": eps, "diameter": num(d), "infinite": d.is_infinite() });
    Ok(Output::new(json, format!("{d}\n")))
}

// ---------------------------------------------------------------------------

#[derive(Args, Debug)]
pub struct CyganArgs {
    /// First point `x1,y1,…,t`.
    #[arg(long)]
    pub a: String,
    /// Second point (default: the identity).
    #[arg(long)]
    pub b: Option<String>,
}

pub fn cygan(_g: &Global, a: CyganArgs) -> Result<Output, Failure> {
    let p = input::heis_point(&a.a)?;
    let q = match &a.b {
        Some(s) => input::heis_point(s)?,
        None => HeisPoint::identity(p.dim()),
    };
    let d = chc::cygan_distances(&p, &q)?;
    let depth = chc::horoball_depth_cc(&q, &p).ok();
    let json = json!({
        "d_cyg": d.d_cyg,
        "d_cyg_mod": d.d_cyg_mod,
        "depth": depth.map(|h| num(h.depth)).unwrap_or(Value::Null),
        "s_star": depth.map(|h| num(h.s_star)).unwrap_or(Value::Null),
    });
    let text = format!("d_cyg={} d_cyg_mod={}{}\n", d.d_cyg, d.d_cyg_mod, depth.map(|h| format!(" depth={} s*={}", h.depth, h.s_star)).unwrap_or_default());
    Ok(Output::new(json, text))
}

// ---------------------------------------------------------------------------

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum OpArg {
    Mul,
    Inv,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum PairingArg {
    PrimedLeft,
    PrimedRight,
}

#[derive(Args, Debug)]
pub struct HeisArgs {
    #[arg(long, required_unless_present = "eisenstein")]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long, value_enum, default_value_t = OpArg::Mul)]
    pub op: OpArg,
    #[arg(long, value_enum, default_value_t = PairingArg::PrimedLeft)]
    pub pairing: PairingArg,
    /// Print the arithmetic objects for ℚ(i√m) instead.
    #[arg(long)]
    pub eisenstein: Option<u64>,
}

fn point_json(p: &HeisPoint) -> Value {
    json!({
        "w0": [p.w0.re, p.w0.im],
        "w": p.w.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>(),
    })
}

pub fn heis(_g: &Global, a: HeisArgs) -> Result<Output, Failure> {
    if let Some(m) = a.eisenstein {
        let e = chc::eisenstein_objects(m)?;
        let text = format!("m={} alpha0={} check={} h'={}\n", e.m, e.alpha0, e.check, e.h_prime);
        let check = e.check;
        return Ok(Output::new(serde_json::to_value(&e).expect("objects serialise"), text).inconclusive_if(!check));
    }
    let p = input::heis_point(a.a.as_deref().unwrap_or_default())?;
    let r = match a.op {
        OpArg::Inv => chc::heis_group(&p, &p, HeisOp::Inv)?,
        OpArg::Mul => {
            let q = input::heis_point(a.b.as_deref().ok_or_else(|| Failure::usage("--b is required for mul"))?)?;
            let pairing = match a.pairing {
                PairingArg::PrimedLeft => Pairing::PrimedLeft,
                PairingArg::PrimedRight => Pairing::PrimedRight,
            };
            p.mul(&q, pairing)?
        }
    };
    let text = format!("w0={} w={:?}\n", r.w0, r.w);
    Ok(Output::new(point_json(&r), text))
}

// ---------------------------------------------------------------------------

#[derive(Args, Debug)]
pub struct KhintchineArgs {
    /// Approximation function: a positive constant or `t^a`.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub phi: String,
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    /// Number of sampled targets.
    #[arg(long, default_value_t = 500)]
    pub n: usize,
    #[arg(long, default_value = "golden")]
    pub alpha: String,
    #[arg(long, default_value = "psl2z")]
    pub group: String,
    /// Classify the integral of φ^δ/t instead of sampling.
    #[arg(long)]
    pub integral: bool,
}

pub fn khintchine(g: &Global, a: KhintchineArgs) -> Result<Output, Failure> {
    let phi: Phi = a.phi.parse()?;
    if a.integral {
        let f = phi.clone();
        let r = khintchine::integral_test(move |t| f.eval(t), a.delta, IntegralBounds::default())?;
        let text = format!("phi={} delta={} verdict={:?} ratio={} margin={}\n", phi.descriptor, a.delta, r.verdict, r.block_ratio, r.margin);
        let mut json = serde_json::to_value(&r).expect("report serialises");
        json["phi"] = json!(phi.descriptor);
        return Ok(Output::new(json, text).inconclusive_if(r.verdict == Verdict::Inconclusive));
    }
    let alpha = input::surd(&a.alpha)?;
    let group = input::group(&a.group)?;
    let h_max = g.h_max.unwrap_or(1e4);
    let r = khintchine::monte_carlo_liminf(&alpha, &group, &phi, a.delta, a.n, h_max, g.seed)?;
    let mut csv = String::from("x,m,tail_m\n");
    for s in &r.samples {
        csv.push_str(&format!("{},{},{}\n", s.0, s.1, s.2));
    }
    let mut text = format!("phi={} h_max={} n={} seed={}\n", r.phi, r.h_max, r.n_points, r.seed);
    for (t, f) in &r.cdf {
        text.push_str(&format!("P(m < {t}) = {f}\n"));
    }
    text.push_str(&format!("median m = {:?}, median tail m = {:?}\n", r.median_m, r.median_tail_m));
    let plot = r.cdf.clone();
    let json = serde_json::to_value(&r).expect("report serialises");
    Ok(Output::new(json, text).csv(csv).plot(plot))
}
