//! Fundamental solutions of `t² − D·u² = 4` and automorphs of forms.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::form::BQForm;
use super::moebius::MoebiusMap;
use super::surd::QuadSurd;
use super::ExactError;

pub const DEFAULT_PELL_BITS: u64 = 4096;

/// Least `(t, u)` with `t, u > 0` and `t² − D·u² = 4`, for a discriminant
/// `D ≡ 0, 1 (mod 4)` that is positive and not a square.
///
/// Expands the reduced number `ξ = (P + √D)/2`, where `P` is the largest
/// integer below `√D` of the parity of `D`.  The first index `k ≥ 1` at
/// which the continued-fraction denominator returns to 2 yields the
/// fundamental unit `(t + u√D)/2` of norm ±1; a norm −1 unit is squared.
pub fn pell_fundamental(d: &BigInt, bit_budget: u64) -> Result<(BigInt, BigInt), ExactError> {
    let four = BigInt::from(4);
    if !d.is_positive() {
        return Err(ExactError::BadDiscriminant(d.to_string()));
    }
    let s = d.sqrt();
    let m4 = d % &four;
    if &s * &s == *d || !(m4.is_zero() || m4.is_one()) {
        return Err(ExactError::BadDiscriminant(d.to_string()));
    }
    let parity = d % 2;
    let mut p0 = s.clone();
    if (&p0 % 2) != parity {
        p0 -= 1;
    }
    let (mut p, mut q) = (p0.clone(), BigInt::from(2));
    // convergents h_k/k_k
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    let budget_err = || ExactError::PellBudget { disc: d.to_string(), bits: bit_budget };
    loop {
        let a = (&p + &s) / &q;
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        if h.bits() > bit_budget {
            return Err(budget_err());
        }
        p = &a * &q - &p;
        q = (d - &p * &p) / &q;
        if q == BigInt::from(2) {
            break;
        }
    }
    // (t + u√D)/2 = h − k·ξ^σ
    let t = BigInt::from(2) * &h - &k * &p0;
    let u = k;
    let n = &t * &t - d * &u * &u;
    if n == four {
        return Ok((t, u));
    }
    debug_assert_eq!(n, -four);
    let t2: BigInt = (&t * &t + d * &u * &u) / 2;
    let u2: BigInt = &t * &u;
    if t2.bits() > bit_budget {
        return Err(budget_err());
    }
    Ok((t2, u2))
}

/// `((t − bu)/2, −cu; au, (t + bu)/2)` for a primitive form.
pub fn automorph_of_form(f: &BQForm, bit_budget: u64) -> Result<MoebiusMap, ExactError> {
    let f = f.primitive();
    let (t, u) = pell_fundamental(&f.disc(), bit_budget)?;
    let two = BigInt::from(2);
    MoebiusMap::from_big((&t - &f.b * &u) / &two, -(&f.c * &u), &f.a * &u, (&t + &f.b * &u) / &two)
}

/// Primitive hyperbolic element of `PSL₂(ℤ)` fixing `x` and `x^σ`.
pub fn automorph_of(x: &QuadSurd) -> Result<MoebiusMap, ExactError> {
    if !x.is_irrational() {
        return Err(ExactError::NotIrrational);
    }
    let f = x.form()?;
    let g = automorph_of_form(&f, DEFAULT_PELL_BITS)?;
    Ok(g.normalized_sign())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_pell(d: i64) -> Option<(i64, i64)> {
        (1..200_000i64).find_map(|u| {
            let t2 = 4 + d * u * u;
            let t = (t2 as f64).sqrt().round() as i64;
            [t - 1, t, t + 1].into_iter().find(|&t| t > 0 && t * t == t2).map(|t| (t, u))
        })
    }

    #[test]
    fn matches_brute_force() {
        for d in 5..400i64 {
            if !(d % 4 == 0 || d % 4 == 1) {
                continue;
            }
            let r = (d as f64).sqrt() as i64;
            if r * r == d || (r + 1) * (r + 1) == d {
                continue;
            }
            let (t, u) = pell_fundamental(&BigInt::from(d), DEFAULT_PELL_BITS).unwrap();
            if let Some((bt, bu)) = brute_pell(d) {
                assert_eq!((t.clone(), u.clone()), (BigInt::from(bt), BigInt::from(bu)), "D = {d}");
            }
            assert_eq!(&t * &t - BigInt::from(d) * &u * &u, BigInt::from(4));
        }
    }

    #[test]
    fn golden_and_sqrt2() {
        assert_eq!(pell_fundamental(&5.into(), 64).unwrap(), (3.into(), 1.into()));
        assert_eq!(pell_fundamental(&8.into(), 64).unwrap(), (6.into(), 2.into()));
        assert_eq!(pell_fundamental(&12.into(), 64).unwrap(), (4.into(), 1.into()));
    }

    #[test]
    fn budget_is_enforced() {
        // D = 4·661 has a large fundamental unit
        assert!(matches!(pell_fundamental(&BigInt::from(4 * 661), 16), Err(ExactError::PellBudget { .. })));
    }

    #[test]
    fn rejects_bad_discriminants() {
        assert!(pell_fundamental(&BigInt::from(9), 64).is_err());
        assert!(pell_fundamental(&BigInt::from(7), 64).is_err());
        assert!(pell_fundamental(&BigInt::from(-3), 64).is_err());
    }

    #[test]
    fn automorphs() {
        let phi = QuadSurd::golden();
        assert_eq!(automorph_of(&phi).unwrap(), MoebiusMap::from_i64(2, 1, 1, 1).unwrap());
        let r2 = QuadSurd::sqrt_int(2).unwrap();
        let g = automorph_of(&r2).unwrap();
        assert_eq!(g, MoebiusMap::from_i64(3, 4, 2, 3).unwrap());
        assert_eq!(g.apply_surd(&r2).unwrap(), r2);
        assert_eq!(g.apply_surd(&r2.galois_conjugate()).unwrap(), r2.galois_conjugate());
        // conjugate input: same axis
        let gs = automorph_of(&phi.galois_conjugate()).unwrap();
        assert_eq!(gs.apply_surd(&phi).unwrap(), phi);
    }
}
