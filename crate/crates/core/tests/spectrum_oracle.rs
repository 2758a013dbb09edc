//! Orbit enumeration and approximation constants against independent routes:
//! word search, the periodic certificate versus the orbit scan, and the
//! symmetries the constant must have.

use std::collections::HashSet;

use proptest::prelude::*;
use qspectra::exactnum::{MoebiusMap, QuadSurd};
use qspectra::orbit::{enumerate_orbit_window, orbit_by_words, GroupSpec, HypBudget, DEFAULT_A_BUDGET};
use qspectra::spectrum::{
    approx_constant_estimate, approx_constant_periodic, default_grid, gamma_n_fixed_point, hurwitz_bounds_catalog, liouville_construct,
    periodic_continued_fraction, spectrum_sample, HurwitzCase, Target,
};

fn in_box(x: &QuadSurd, h_max: f64, lo: i64, hi: i64) -> bool {
    let lo = QuadSurd::from_ints(lo, 0, 1, 1).unwrap();
    let hi = QuadSurd::from_ints(hi, 0, 1, 1).unwrap();
    x.complexity_h().unwrap().value <= h_max + 1e-9 && x.cmp_real(&lo).unwrap().is_ge() && x.cmp_real(&hi).unwrap().is_le()
}

#[test]
fn enumeration_equals_word_search() {
    // small boxes are reached by short words, so depth 16 is exhaustive here
    for (alpha, h_max, lo, hi) in [
        (QuadSurd::golden(), 6.0, -1, 2),
        (QuadSurd::sqrt_int(2).unwrap(), 6.0, 0, 1),
        (QuadSurd::sqrt_int(3).unwrap(), 5.0, -1, 1),
    ] {
        let words: HashSet<QuadSurd> = orbit_by_words(&alpha, 16).into_iter().filter(|x| in_box(x, h_max, lo, hi)).collect();
        let forms: HashSet<QuadSurd> = enumerate_orbit_window(&alpha, &GroupSpec::Psl2z, h_max, (lo as f64, hi as f64), DEFAULT_A_BUDGET, false)
            .unwrap()
            .into_iter()
            .map(|e| e.value)
            .collect();
        assert!(!forms.is_empty());
        assert_eq!(forms, words, "α₀ = {}", alpha.to_text());
    }
}

#[test]
fn witnesses_reproduce_every_element() {
    let alpha = QuadSurd::sqrt_int(7).unwrap();
    for e in enumerate_orbit_window(&alpha, &GroupSpec::Psl2z, 40.0, (-2.0, 3.0), DEFAULT_A_BUDGET, true).unwrap() {
        let (w, conj) = e.witness.unwrap();
        let base = if conj { alpha.galois_conjugate() } else { alpha.clone() };
        assert_eq!(w.apply_surd(&base).unwrap(), e.value);
    }
}

#[test]
fn periodic_certificate_agrees_with_orbit_scan() {
    let golden = QuadSurd::golden();
    let mut points: Vec<QuadSurd> = (2..=3).map(|n| gamma_n_fixed_point(n).unwrap()).collect();
    points.push(QuadSurd::sqrt_int(2).unwrap());
    points.push(QuadSurd::sqrt_int(3).unwrap());
    points.push(periodic_continued_fraction(&[1, 2]).unwrap());
    for xi in points {
        let cert = approx_constant_periodic(&xi, &golden, &GroupSpec::Psl2z).unwrap();
        assert!(cert.certified);
        let est = approx_constant_estimate(xi.clone(), &golden, &GroupSpec::Psl2z, &default_grid(1e5), 1e5).unwrap();
        assert!((cert.c_value - est.value()).abs() < 1e-3, "{}: certified {} vs scan {}", xi.to_text(), cert.c_value, est.value());
    }
}

#[test]
fn certified_values_respect_both_upper_bounds() {
    let budget = HypBudget { max_disc: 60, extra: vec![] };
    let samples = spectrum_sample(&QuadSurd::golden(), &GroupSpec::Psl2z, &budget).unwrap();
    assert!(samples.len() > 20);
    let psl = hurwitz_bounds_catalog(HurwitzCase::Psl2z).unwrap();
    let golden_k = 1.0 - 1.0 / 5f64.sqrt();
    for s in samples.iter().filter(|s| s.certified) {
        assert!(s.c_value <= golden_k + 1e-9, "{}: {}", s.xi.to_text(), s.c_value);
        assert!(s.c_value <= psl);
    }
}

#[test]
fn tail_infima_shrink_as_the_budget_grows() {
    let golden = QuadSurd::golden();
    let grid = [1.0, 10.0, 100.0];
    for x in [0.123456, 0.5 + 1e-7, 0.9876] {
        let mut prev: Option<Vec<f64>> = None;
        for h_max in [1e3, 1e4, 1e5] {
            let e = approx_constant_estimate(x, &golden, &GroupSpec::Psl2z, &grid, h_max).unwrap();
            if let Some(p) = prev {
                for (a, b) in p.iter().zip(&e.tail_infima) {
                    assert!(b <= a, "{x}: {b} > {a}");
                }
            }
            prev = Some(e.tail_infima);
        }
    }
}

#[test]
fn liouville_envelope_matches_certificate() {
    let golden = QuadSurd::golden();
    for pattern in [&[2u32][..], &[5], &[1, 3], &[2, 1, 1]] {
        let l = liouville_construct(pattern, 6).unwrap();
        let cert = approx_constant_periodic(&l.xi, &golden, &GroupSpec::Psl2z).unwrap();
        assert!((l.value - l.xi.to_f64()).abs() < 1e-15);
        assert!((l.estimate.value() - cert.c_value).abs() < 1e-3, "{pattern:?}: {} vs {}", l.estimate.value(), cert.c_value);
    }
}

#[test]
fn exact_translation_invariance() {
    let golden = QuadSurd::golden();
    let t = MoebiusMap::t();
    for xi in [QuadSurd::sqrt_int(2).unwrap(), gamma_n_fixed_point(3).unwrap()] {
        let a = approx_constant_periodic(&xi, &golden, &GroupSpec::Psl2z).unwrap();
        let b = approx_constant_periodic(&t.apply_surd(&xi).unwrap(), &golden, &GroupSpec::Psl2z).unwrap();
        assert_eq!(a.c_value, b.c_value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn estimate_is_invariant_under_unit_translation(x in 0.001f64..0.999) {
        let golden = QuadSurd::golden();
        let grid = default_grid(1e4);
        let a = approx_constant_estimate(Target::Real(x), &golden, &GroupSpec::Psl2z, &grid, 1e4).unwrap();
        let b = approx_constant_estimate(Target::Real(x + 1.0), &golden, &GroupSpec::Psl2z, &grid, 1e4).unwrap();
        for (u, v) in a.tail_infima.iter().zip(&b.tail_infima) {
            prop_assert!((u - v).abs() <= 1e-9 * (1.0 + u.abs()), "{} vs {}", u, v);
        }
    }
}
