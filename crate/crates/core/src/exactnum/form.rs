//! Indefinite binary quadratic forms and their reduction cycles.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::moebius::MoebiusMap;
use super::surd::QuadSurd;
use super::ExactError;

/// `aX² + bX + c` with `b² − 4ac > 0` not a square.
///
/// Forms and roots are tied together by the *first root*
/// `ω_f = (−b + √D)/(2a)`; the other root belongs to `−f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BQForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

/// A ρ-cycle of reduced forms of one discriminant.
#[derive(Clone, Debug)]
pub struct FormCycle {
    pub forms: Vec<BQForm>,
}

impl BQForm {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Result<Self, ExactError> {
        let f = BQForm { a, b, c };
        let d = f.disc();
        if !d.is_positive() || d.sqrt().pow(2) == d {
            return Err(ExactError::BadDiscriminant(d.to_string()));
        }
        Ok(f)
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Result<Self, ExactError> {
        Self::new(a.into(), b.into(), c.into())
    }

    pub fn disc(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn content(&self) -> BigInt {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn primitive(&self) -> BQForm {
        let g = self.content();
        BQForm { a: &self.a / &g, b: &self.b / &g, c: &self.c / &g }
    }

    pub fn neg(&self) -> BQForm {
        BQForm { a: -&self.a, b: -&self.b, c: -&self.c }
    }

    pub fn eval(&self, x: &QuadSurd) -> QuadSurd {
        let a = QuadSurd::from_scalar(super::BaseScalar::from_bigint(self.a.clone()));
        let b = QuadSurd::from_scalar(super::BaseScalar::from_bigint(self.b.clone()));
        let c = QuadSurd::from_scalar(super::BaseScalar::from_bigint(self.c.clone()));
        &(&(&a * x) + &b) * x + c
    }

    /// `(−b + √D)/(2a)`.
    pub fn first_root(&self) -> QuadSurd {
        let two_a = BigInt::from(2) * &self.a;
        QuadSurd::from_big(&-&self.b, &BigInt::one(), &self.disc(), &two_a).expect("non-square discriminant")
    }

    /// `(ω_f, ω_f^σ)`.
    pub fn roots(&self) -> (QuadSurd, QuadSurd) {
        let r = self.first_root();
        let s = r.galois_conjugate();
        (r, s)
    }

    /// Transport by `γ` so that the first root of the result is `γ·ω_f`.
    pub fn act(&self, g: &MoebiusMap) -> Result<BQForm, ExactError> {
        let [p, q, r, s] = g.int_entries()?;
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let two = BigInt::from(2);
        let na = a * &s * &s - b * &s * &r + c * &r * &r;
        let nb = -(&two * a * &s * &q) + b * (&s * &p + &q * &r) - &two * c * &r * &p;
        let nc = a * &q * &q - b * &q * &p + c * &p * &p;
        let f = BQForm { a: na, b: nb, c: nc };
        // orientation-reversing maps swap the two roots
        Ok(if g.det() < 0 { f.neg() } else { f })
    }

    fn isqrt_disc(&self) -> BigInt {
        self.disc().sqrt()
    }

    /// `|√D − 2|a|| < b < √D`.
    pub fn is_reduced(&self) -> bool {
        let s = self.isqrt_disc();
        let two_a = BigInt::from(2) * self.a.abs();
        self.b.is_positive() && self.b <= s && &two_a + &self.b > s && &two_a - &self.b <= s
    }

    /// One reduction step `(a,b,c) ↦ (c, −b + 2ck, a − bk + ck²)` with the
    /// normalising `k`; returns the step matrix `(−k, −1; 1, 0)` as well.
    pub fn rho(&self) -> (BQForm, MoebiusMap) {
        let s = self.isqrt_disc();
        let (nb, k) = rho_parameter(&self.b, &self.c, &s);
        let na = self.c.clone();
        let nc = (&nb * &nb - self.disc()) / (BigInt::from(4) * &na);
        let m = MoebiusMap::from_big(-&k, -BigInt::one(), BigInt::one(), BigInt::zero()).unwrap();
        (BQForm { a: na, b: nb, c: nc }, m)
    }

    /// Reduce, returning the reduced form and `U` with `U·ω_f = ω_reduced`.
    pub fn reduce(&self) -> (BQForm, MoebiusMap) {
        let mut f = self.clone();
        let mut u = MoebiusMap::identity();
        // a first ρ step normalises; reduction then takes O(log|a|) steps
        while !f.is_reduced() {
            let (g, m) = f.rho();
            u = m.compose(&u);
            f = g;
        }
        (f, u)
    }

    /// The ρ-cycle through the reduction of `self`.
    pub fn cycle(&self) -> FormCycle {
        let (start, _) = self.reduce();
        let mut forms = vec![start.clone()];
        let mut f = start.rho().0;
        while f != start {
            forms.push(f.clone());
            f = f.rho().0;
        }
        FormCycle { forms }
    }

    /// Proper (`SL₂(ℤ)`) equivalence, with a witness `γ` such that
    /// `γ·ω_self = ω_other`.
    pub fn equivalence_witness(&self, other: &BQForm) -> Option<MoebiusMap> {
        if self.disc() != other.disc() {
            return None;
        }
        let (r1, u1) = self.reduce();
        let (r2, u2) = other.reduce();
        // walk the cycle from r1 until r2, composing step matrices
        let mut f = r1.clone();
        let mut v = MoebiusMap::identity();
        loop {
            if f == r2 {
                return Some(u2.inverse().compose(&v).compose(&u1));
            }
            let (g, m) = f.rho();
            v = m.compose(&v);
            f = g;
            if f == r1 {
                return None;
            }
        }
    }
}

/// Normalising parameter for the ρ step: returns `(b', k)` with
/// `b' = −b + 2ck` in `(√D − 2|c|, √D)` if `|c| < √D`, else in `(−|c|, |c|]`.
pub(crate) fn rho_parameter(b: &BigInt, c: &BigInt, s: &BigInt) -> (BigInt, BigInt) {
    let two_c = BigInt::from(2) * c.abs();
    let nb = if c.abs() <= *s {
        s - (s + b).mod_floor(&two_c)
    } else {
        let lo = BigInt::one() - c.abs();
        (-b - &lo).mod_floor(&two_c) + lo
    };
    let k = (&nb + b) / (BigInt::from(2) * c);
    (nb, k)
}

impl fmt::Display for BQForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl FormCycle {
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// Lexicographically least member; equal keys ⇔ equal cycles.
    pub fn key(&self) -> &BQForm {
        self.forms.iter().min().expect("cycles are non-empty")
    }

    pub fn contains(&self, f: &BQForm) -> bool {
        self.forms.contains(f)
    }

    pub fn same_as(&self, other: &FormCycle) -> bool {
        self.key() == other.key()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_cycle() {
        let f = BQForm::from_i64(1, -1, -1).unwrap();
        let cyc = f.cycle();
        assert_eq!(cyc.len(), 2);
        assert!(cyc.contains(&BQForm::from_i64(1, 1, -1).unwrap()));
        assert!(cyc.contains(&BQForm::from_i64(-1, 1, 1).unwrap()));
    }

    #[test]
    fn reduction_transports_first_root() {
        for (a, b, c) in [(5, -5, 1), (1, 0, -2), (7, 13, -3), (-11, 9, 4), (3, 101, 2)] {
            let f = BQForm::from_i64(a, b, c).unwrap();
            let (r, u) = f.reduce();
            assert!(r.is_reduced());
            assert_eq!(u.apply_surd(&f.first_root()).unwrap(), r.first_root());
        }
    }

    #[test]
    fn witness_for_shifted_golden() {
        let f = BQForm::from_i64(1, -1, -1).unwrap();
        let g = BQForm::from_i64(5, -5, 1).unwrap();
        let w = f.equivalence_witness(&g).expect("same class");
        assert_eq!(w.apply_surd(&f.first_root()).unwrap(), g.first_root());
        assert!(w.det() == 1);
    }

    #[test]
    fn different_discriminants_never_equivalent() {
        let f = BQForm::from_i64(1, -1, -1).unwrap();
        let g = BQForm::from_i64(1, 0, -2).unwrap();
        assert!(f.equivalence_witness(&g).is_none());
        assert!(!f.cycle().same_as(&g.cycle()));
    }

    #[test]
    fn sqrt3_and_its_negative_are_inequivalent() {
        // disc 12 has narrow class number 2: x² − 3 and −x² + 3 differ
        let f = BQForm::from_i64(1, 0, -3).unwrap();
        assert!(f.equivalence_witness(&f.neg()).is_none());
    }

    #[test]
    fn square_discriminant_rejected() {
        assert!(BQForm::from_i64(1, 0, -4).is_err());
        assert!(BQForm::from_i64(1, 1, 1).is_err());
    }
}
