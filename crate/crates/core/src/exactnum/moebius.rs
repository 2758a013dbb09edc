//! Integral Möbius maps (homographies and anti-homographies).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::BaseScalar;
use super::surd::QuadSurd;
use super::ExactError;

/// A point of `K(√Δ) ∪ {∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ext {
    Inf,
    Fin(QuadSurd),
}

impl Ext {
    pub fn finite(&self) -> Option<&QuadSurd> {
        match self {
            Ext::Inf => None,
            Ext::Fin(x) => Some(x),
        }
    }
}

impl From<QuadSurd> for Ext {
    fn from(x: QuadSurd) -> Self {
        Ext::Fin(x)
    }
}

/// `x ↦ (ax+b)/(cx+d)`, precomposed with complex conjugation when `anti`.
///
/// Matrices are projective: `M` and `−M` are the same map and compare equal.
#[derive(Clone, Debug)]
pub struct MoebiusMap {
    pub a: BaseScalar,
    pub b: BaseScalar,
    pub c: BaseScalar,
    pub d: BaseScalar,
    pub anti: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Classification {
    Elliptic,
    Parabolic { fixed: Ext },
    /// Fixed points ordered (repelling, attracting), and the translation length.
    Hyperbolic { repelling: Ext, attracting: Ext, length: f64 },
}

impl MoebiusMap {
    pub fn new(a: BaseScalar, b: BaseScalar, c: BaseScalar, d: BaseScalar, anti: bool) -> Result<Self, ExactError> {
        let g = MoebiusMap { a, b, c, d, anti };
        let det = g.det_scalar()?;
        if !(det == BaseScalar::one() || det == -BaseScalar::one()) {
            return Err(ExactError::NotUnimodular);
        }
        for e in [&g.a, &g.b, &g.c, &g.d] {
            if !e.is_algebraic_integer() {
                return Err(ExactError::NotUnimodular);
            }
        }
        Ok(g)
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self, ExactError> {
        Self::new(BaseScalar::int(a), BaseScalar::int(b), BaseScalar::int(c), BaseScalar::int(d), false)
    }

    pub fn from_big(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self, ExactError> {
        Self::new(
            BaseScalar::from_bigint(a),
            BaseScalar::from_bigint(b),
            BaseScalar::from_bigint(c),
            BaseScalar::from_bigint(d),
            false,
        )
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1).unwrap()
    }

    /// `x ↦ −1/x`.
    pub fn s() -> Self {
        Self::from_i64(0, -1, 1, 0).unwrap()
    }

    /// `x ↦ x + 1`.
    pub fn t() -> Self {
        Self::from_i64(1, 1, 0, 1).unwrap()
    }

    /// `x ↦ −x` (determinant −1).
    pub fn j() -> Self {
        Self::from_i64(-1, 0, 0, 1).unwrap()
    }

    fn det_scalar(&self) -> Result<BaseScalar, ExactError> {
        let ad = self.a.checked_mul(&self.d)?;
        let bc = self.b.checked_mul(&self.c)?;
        ad.checked_add(&-bc)
    }

    /// `ad − bc`, which is ±1.
    pub fn det(&self) -> i32 {
        let d = self.det_scalar().expect("validated at construction");
        if d.re.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn trace(&self) -> BaseScalar {
        &self.a + &self.d
    }

    /// Integer entries `[a, b, c, d]` for maps over `ℤ`.
    pub fn int_entries(&self) -> Result<[BigInt; 4], ExactError> {
        let mut out: [BigInt; 4] = Default::default();
        for (o, e) in out.iter_mut().zip([&self.a, &self.b, &self.c, &self.d]) {
            if !e.is_rational() || !e.re.is_integer() {
                return Err(ExactError::NotUnimodular);
            }
            *o = e.re.to_integer();
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        let o = if self.anti {
            MoebiusMap { a: other.a.conj(), b: other.b.conj(), c: other.c.conj(), d: other.d.conj(), anti: other.anti }
        } else {
            other.clone()
        };
        MoebiusMap {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
            anti: self.anti ^ other.anti,
        }
    }

    pub fn inverse(&self) -> MoebiusMap {
        let m = MoebiusMap { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone(), anti: false };
        if self.anti {
            MoebiusMap { a: m.a.conj(), b: m.b.conj(), c: m.c.conj(), d: m.d.conj(), anti: true }
        } else {
            m
        }
    }

    pub fn pow(&self, n: i64) -> MoebiusMap {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = MoebiusMap::identity();
        for _ in 0..n.unsigned_abs() {
            out = base.compose(&out);
        }
        out
    }

    pub fn apply(&self, x: &Ext) -> Result<Ext, ExactError> {
        let x = match x {
            Ext::Fin(v) if self.anti => Ext::Fin(v.complex_conjugate()?),
            other => other.clone(),
        };
        let lift = |s: &BaseScalar| QuadSurd::from_scalar(s.clone());
        match x {
            Ext::Inf => {
                if self.c.is_zero() {
                    Ok(Ext::Inf)
                } else {
                    Ok(Ext::Fin(lift(&self.a).checked_div(&lift(&self.c))?))
                }
            }
            Ext::Fin(v) => {
                let den = lift(&self.c).checked_mul(&v)?.checked_add(&lift(&self.d))?;
                if den == QuadSurd::zero() {
                    return Ok(Ext::Inf);
                }
                let num = lift(&self.a).checked_mul(&v)?.checked_add(&lift(&self.b))?;
                Ok(Ext::Fin(num.checked_div(&den)?))
            }
        }
    }

    /// Apply to a finite point that is known not to be the pole.
    pub fn apply_surd(&self, x: &QuadSurd) -> Result<QuadSurd, ExactError> {
        match self.apply(&Ext::Fin(x.clone()))? {
            Ext::Fin(y) => Ok(y),
            Ext::Inf => Err(ExactError::DivisionByZero),
        }
    }

    pub fn is_identity(&self) -> bool {
        !self.anti && *self == MoebiusMap::identity()
    }

    /// Dynamical type of an orientation-preserving real map.
    pub fn classify(&self) -> Result<Classification, ExactError> {
        if self.is_identity() {
            return Err(ExactError::Identity);
        }
        let [a, _, c, d] = self.int_entries()?;
        if self.anti || self.det() != 1 {
            return Err(ExactError::NotUnimodular);
        }
        let t = &a + &d;
        let t_abs = t.abs();
        let two = BigInt::from(2);
        if t_abs < two {
            return Ok(Classification::Elliptic);
        }
        if t_abs == two {
            // (a−d)² + 4bc = 0: a double fixed point
            let fixed = if c.is_zero() {
                Ext::Inf
            } else {
                Ext::Fin(QuadSurd::from_big(&(&a - &d), &BigInt::zero(), &BigInt::one(), &(&two * &c))?)
            };
            return Ok(Classification::Parabolic { fixed });
        }
        // roots of cX² + (d−a)X − b: ((a−d) ± √(t²−4))/(2c); at a fixed point
        // x the multiplier is (cx+d)^{-2} and cx+d = (t ± √(t²−4))/2, so the
        // attracting point takes the sign of t
        let disc = &t * &t - BigInt::from(4);
        let length = 2.0 * (t_abs.to_f64().unwrap() / 2.0).acosh();
        let s = if t.is_positive() { BigInt::one() } else { -BigInt::one() };
        let att = QuadSurd::from_big(&(&a - &d), &s, &disc, &(&two * &c))?;
        let rep = att.galois_conjugate();
        Ok(Classification::Hyperbolic { repelling: Ext::Fin(rep), attracting: Ext::Fin(att), length })
    }

    /// Hyperbolic translation length `2 argcosh(|tr|/2)`.
    pub fn translation_length(&self) -> Option<f64> {
        match self.classify() {
            Ok(Classification::Hyperbolic { length, .. }) => Some(length),
            _ => None,
        }
    }
}

impl PartialEq for MoebiusMap {
    fn eq(&self, o: &Self) -> bool {
        if self.anti != o.anti {
            return false;
        }
        let same = self.a == o.a && self.b == o.b && self.c == o.c && self.d == o.d;
        let neg = self.a == -&o.a && self.b == -&o.b && self.c == -&o.c && self.d == -&o.d;
        same || neg
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.a, self.b, self.c, self.d)?;
        if self.anti {
            write!(f, "∘conj")?;
        }
        Ok(())
    }
}

impl MoebiusMap {
    /// Representative with the first non-zero entry of `(c, d)` positive.
    pub fn normalized_sign(&self) -> MoebiusMap {
        let flip = if !self.c.is_zero() { self.c.re.is_negative() } else { self.d.re.is_negative() };
        if flip {
            MoebiusMap { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d, anti: self.anti }
        } else {
            self.clone()
        }
    }

    pub fn entries_i64(&self) -> Option<[i64; 4]> {
        let e = self.int_entries().ok()?;
        Some([e[0].to_i64()?, e[1].to_i64()?, e[2].to_i64()?, e[3].to_i64()?])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_sends_golden_to_conjugate() {
        let phi = QuadSurd::golden();
        assert_eq!(MoebiusMap::s().apply_surd(&phi).unwrap(), phi.galois_conjugate());
    }

    #[test]
    fn t_fixes_infinity() {
        assert_eq!(MoebiusMap::t().apply(&Ext::Inf).unwrap(), Ext::Inf);
        assert_eq!(MoebiusMap::s().apply(&Ext::Inf).unwrap(), Ext::Fin(QuadSurd::zero()));
        assert_eq!(MoebiusMap::s().apply(&Ext::Fin(QuadSurd::zero())).unwrap(), Ext::Inf);
    }

    #[test]
    fn gamma_one_fixes_golden() {
        let g = MoebiusMap::from_i64(2, 1, 1, 1).unwrap();
        let phi = QuadSurd::golden();
        assert_eq!(g.apply_surd(&phi).unwrap(), phi);
        match g.classify().unwrap() {
            Classification::Hyperbolic { repelling, attracting, length } => {
                assert_eq!(attracting, Ext::Fin(phi.clone()));
                assert_eq!(repelling, Ext::Fin(phi.galois_conjugate()));
                assert!((2.0 * (length / 2.0).cosh() - 3.0).abs() < 1e-14);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn gamma_n_fixed_points() {
        for n in 1..=6i64 {
            let g = MoebiusMap::from_i64(n * n + 1, n, n, 1).unwrap();
            let Classification::Hyperbolic { repelling, attracting, length } = g.classify().unwrap() else {
                panic!()
            };
            // n/2 ± √(n²/4 + 1) = (n ± √(n²+4))/2
            let plus = QuadSurd::from_ints(n, 1, n * n + 4, 2).unwrap();
            assert_eq!(attracting, Ext::Fin(plus.clone()));
            assert_eq!(repelling, Ext::Fin(plus.galois_conjugate()));
            let expect = 2.0 * ((n * n) as f64 / 2.0 + 1.0).acosh();
            assert!((length - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn parabolic_and_identity() {
        assert_eq!(MoebiusMap::t().classify().unwrap(), Classification::Parabolic { fixed: Ext::Inf });
        assert_eq!(MoebiusMap::s().classify().unwrap(), Classification::Elliptic);
        assert!(matches!(MoebiusMap::identity().classify(), Err(ExactError::Identity)));
        assert!(matches!(MoebiusMap::from_i64(-1, 0, 0, -1).unwrap().classify(), Err(ExactError::Identity)));
    }

    #[test]
    fn composition_is_an_action() {
        let x = QuadSurd::from_ints(3, 2, 7, 5).unwrap();
        let g = MoebiusMap::from_i64(2, 3, 1, 2).unwrap();
        let h = MoebiusMap::from_i64(5, -2, -2, 1).unwrap();
        let lhs = g.compose(&h).apply_surd(&x).unwrap();
        let rhs = g.apply_surd(&h.apply_surd(&x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(g.compose(&g.inverse()).is_identity());
    }

    #[test]
    fn projective_equality() {
        assert_eq!(MoebiusMap::from_i64(2, 1, 1, 1).unwrap(), MoebiusMap::from_i64(-2, -1, -1, -1).unwrap());
        assert!(MoebiusMap::from_i64(2, 1, 1, 2).is_err());
    }

    #[test]
    fn anti_map_on_complex_point() {
        // i ↦ conj(i) = −i under the anti-identity
        let conj = MoebiusMap::new(BaseScalar::one(), BaseScalar::zero(), BaseScalar::zero(), BaseScalar::one(), true).unwrap();
        let i = QuadSurd::sqrt_int(-1).unwrap();
        assert_eq!(conj.apply_surd(&i).unwrap(), -i.clone());
        // and it is an involution
        assert!(conj.compose(&conj).is_identity());
    }
}
