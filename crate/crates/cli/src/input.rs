//! Parsing of command-line values: surds with aliases, windows, points.

use num_complex::Complex64;
use qspectra::exactnum::{MoebiusMap, QuadSurd};
use qspectra::orbit::GroupSpec;
use qspectra::spectrum::Target;

use crate::commands::Failure;

/// A quadratic surd, accepting the aliases `golden` and `sqrt2`.
pub fn surd(s: &str) -> Result<QuadSurd, Failure> {
    match s.trim() {
        "golden" | "phi" => Ok(QuadSurd::golden()),
        "sqrt2" => Ok(QuadSurd::sqrt_int(2)?),
        t => Ok(QuadSurd::parse(t)?),
    }
}

/// A target: an exact surd when it contains `sqrt` or is an alias, a float
/// otherwise.
pub fn target(s: &str) -> Result<Target, Failure> {
    let t = s.trim();
    if t.contains("sqrt") || t == "golden" || t == "phi" {
        return Ok(Target::Exact(surd(t)?));
    }
    t.parse::<f64>().map(Target::Real).map_err(|_| Failure::usage(format!("cannot parse target {t:?}")))
}

pub fn group(s: &str) -> Result<GroupSpec, Failure> {
    let t = s.trim().to_ascii_lowercase();
    match t.as_str() {
        "psl2z" | "psl" => Ok(GroupSpec::Psl2z),
        "pgl2z" | "pgl" => Ok(GroupSpec::Pgl2z),
        _ => {
            let n = t
                .strip_prefix("gamma0(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|n| n.parse::<i64>().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| Failure::usage(format!("unknown group {s:?}; expected psl2z, pgl2z or gamma0(N)")))?;
            Ok(GroupSpec::gamma0(n))
        }
    }
}

/// `a:b` with `a ≤ b`.
pub fn window(s: &str) -> Result<(f64, f64), Failure> {
    let bad = || Failure::usage(format!("window must be a:b, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let (a, b): (f64, f64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if !(a <= b) {
        return Err(bad());
    }
    Ok((a, b))
}

/// `a,b,c,d`.
pub fn matrix(s: &str) -> Result<MoebiusMap, Failure> {
    let v: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::usage(format!("matrix must be a,b,c,d, got {s:?}")))?;
    if v.len() != 4 {
        return Err(Failure::usage(format!("matrix must have four entries, got {}", v.len())));
    }
    Ok(MoebiusMap::from_i64(v[0], v[1], v[2], v[3])?)
}

/// Heisenberg point `x1,y1,…,t`: horizontal coordinates `w_k = x_k + i y_k`
/// followed by the vertical coordinate.
pub fn heis_point(s: &str) -> Result<qspectra::chc::HeisPoint, Failure> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::usage(format!("point must be x1,y1,...,t, got {s:?}")))?;
    if v.len() < 3 || v.len() % 2 == 0 {
        return Err(Failure::usage(format!("point needs an odd number (>= 3) of coordinates, got {}", v.len())));
    }
    let t = v[v.len() - 1];
    let w = v[..v.len() - 1].chunks(2).map(|c| Complex64::new(c[0], c[1])).collect();
    Ok(qspectra::chc::HeisPoint::from_horizontal(w, t)?)
}

/// Geodesic with real endpoints `a:b` (`inf` allowed).
pub fn geodesic(s: &str) -> Result<qspectra::hgeom::Geodesic, Failure> {
    use qspectra::hgeom::{BoundaryPoint, Geodesic};
    let bad = || Failure::usage(format!("geodesic must be a:b, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let pt = |t: &str| -> Result<BoundaryPoint, Failure> {
        match t.trim() {
            "inf" | "∞" => Ok(BoundaryPoint::Inf),
            x => Ok(BoundaryPoint::real(x.parse::<f64>().map_err(|_| bad())?)),
        }
    };
    Ok(Geodesic::new(pt(a)?, pt(b)?)?)
}
