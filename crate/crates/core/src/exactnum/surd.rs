//! Quadratic surds `u + v·√Δ` over the base field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::form::BQForm;
use super::scalar::{ratio_to_f64, BaseScalar};
use super::ExactError;

/// An element `u + v·√Δ` of a quadratic extension of `K`.
///
/// When `Δ` is rational it is stored as a squarefree integer, with the square
/// part pushed into `v`; a vanishing `v` is stored with `Δ = 0`, so that
/// structural equality coincides with equality of values.  For a negative
/// `Δ`, `√Δ` denotes `i·√|Δ|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    pub u: BaseScalar,
    pub v: BaseScalar,
    pub delta: BaseScalar,
    /// False only when `Δ` is a non-rational element of `K` and could not be
    /// brought to a squarefree integral representative.
    pub canonical: bool,
}

/// `h` together with the exact rational `h²` when available.
#[derive(Clone, Debug, PartialEq)]
pub struct Complexity {
    pub h_sq: Option<BigRational>,
    pub value: f64,
}

/// Split a non-zero integer `n` as `s·f²` with `s` squarefree (sign kept on `s`).
///
/// Trial division stops once the cofactor has at most two prime factors, at
/// which point it is squarefree unless it is a perfect square.
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_zero());
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut r = n.abs();
    let mut s = BigInt::one();
    let mut f = BigInt::one();
    let mut d = BigInt::from(2u32);
    loop {
        if &d * &d * &d > r {
            break;
        }
        if (&r % &d).is_zero() {
            let mut e = 0u32;
            while (&r % &d).is_zero() {
                r /= &d;
                e += 1;
            }
            f *= d.pow(e / 2);
            if e % 2 == 1 {
                s *= &d;
            }
        }
        d += if d == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if r > BigInt::one() {
        let q = r.sqrt();
        if &q * &q == r {
            f *= q;
        } else {
            s *= r;
        }
    }
    (s * sign, f)
}

fn q_of(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

impl QuadSurd {
    /// Build `u + v√Δ`, canonicalising `Δ`.  Returns the element of `K` when
    /// `√Δ` turns out to lie in `K`.
    pub fn new(u: BaseScalar, v: BaseScalar, delta: BaseScalar) -> Result<Self, ExactError> {
        let m = BaseScalar::join_m(BaseScalar::join_m(u.m, v.m)?, delta.m)?;
        if v.is_zero() || delta.is_zero() {
            return Ok(Self::from_scalar(u));
        }
        if !delta.is_rational() {
            return Ok(QuadSurd { u, v, delta, canonical: false });
        }
        // Δ = p/q = (p·q)/q², so √Δ = (f/q)·√s with p·q = s·f².
        let p = delta.re.numer().clone();
        let q = delta.re.denom().clone();
        let (s, f) = squarefree_decompose(&(&p * &q));
        let v = v.checked_mul(&BaseScalar::rational(BigRational::new(f, q)))?;
        if s.is_one() {
            return Ok(Self::from_scalar(u.checked_add(&v)?));
        }
        if m != 0 && s == -BigInt::from(m) {
            let w = v.checked_mul(&BaseScalar::i_sqrt(m))?;
            return Ok(Self::from_scalar(u.checked_add(&w)?));
        }
        Ok(QuadSurd { u, v, delta: BaseScalar::from_bigint(s), canonical: true })
    }

    /// `(p + q√d)/r` over `ℚ`.
    pub fn from_ints(p: i64, q: i64, d: i64, r: i64) -> Result<Self, ExactError> {
        if r == 0 {
            return Err(ExactError::DivisionByZero);
        }
        Self::new(BaseScalar::ratio(p, r), BaseScalar::ratio(q, r), BaseScalar::int(d))
    }

    pub fn from_big(p: &BigInt, q: &BigInt, d: &BigInt, r: &BigInt) -> Result<Self, ExactError> {
        if r.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Self::new(
            BaseScalar::rational(BigRational::new(p.clone(), r.clone())),
            BaseScalar::rational(BigRational::new(q.clone(), r.clone())),
            BaseScalar::from_bigint(d.clone()),
        )
    }

    pub fn from_scalar(u: BaseScalar) -> Self {
        QuadSurd { u, v: BaseScalar::zero(), delta: BaseScalar::zero(), canonical: true }
    }

    pub fn zero() -> Self {
        Self::from_scalar(BaseScalar::zero())
    }

    pub fn one() -> Self {
        Self::from_scalar(BaseScalar::one())
    }

    /// The golden ratio `(1+√5)/2`.
    pub fn golden() -> Self {
        Self::from_ints(1, 1, 5, 2).unwrap()
    }

    pub fn sqrt_int(d: i64) -> Result<Self, ExactError> {
        Self::from_ints(0, 1, d, 1)
    }

    pub fn is_irrational(&self) -> bool {
        !self.v.is_zero()
    }

    pub fn as_scalar(&self) -> Option<&BaseScalar> {
        if self.is_irrational() {
            None
        } else {
            Some(&self.u)
        }
    }

    /// Field parameter `m` of the base field the value lives over.
    pub fn base_m(&self) -> u64 {
        self.u.m.max(self.v.m).max(self.delta.m)
    }

    /// Real value over `ℚ`: rational coefficients and `Δ > 0` (or no surd part).
    pub fn is_real(&self) -> bool {
        self.u.is_rational()
            && self.v.is_rational()
            && (!self.is_irrational() || (self.delta.is_rational() && self.delta.re.is_positive()))
    }

    fn shared_delta(&self, o: &Self) -> Result<BaseScalar, ExactError> {
        match (self.is_irrational(), o.is_irrational()) {
            (false, false) => Ok(BaseScalar::zero()),
            (true, false) => Ok(self.delta.clone()),
            (false, true) => Ok(o.delta.clone()),
            (true, true) => {
                if self.delta == o.delta {
                    Ok(self.delta.clone())
                } else {
                    Err(ExactError::IncompatibleDelta(self.delta.to_string(), o.delta.to_string()))
                }
            }
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, ExactError> {
        let delta = self.shared_delta(o)?;
        let u = self.u.checked_add(&o.u)?;
        let v = self.v.checked_add(&o.v)?;
        Self::rebuild(u, v, delta)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, ExactError> {
        self.checked_add(&-o)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, ExactError> {
        let delta = self.shared_delta(o)?;
        let vv = self.v.checked_mul(&o.v)?.checked_mul(&delta)?;
        let u = self.u.checked_mul(&o.u)?.checked_add(&vv)?;
        let v = self.u.checked_mul(&o.v)?.checked_add(&self.v.checked_mul(&o.u)?)?;
        Self::rebuild(u, v, delta)
    }

    /// Field norm to `K`: `u² − v²Δ`.
    pub fn norm_k(&self) -> BaseScalar {
        let vv = &(&self.v * &self.v) * &self.delta;
        &(&self.u * &self.u) - &vv
    }

    pub fn trace_k(&self) -> BaseScalar {
        &self.u + &self.u
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        let n = self.norm_k();
        if n.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let ninv = n.inv()?;
        let u = self.u.checked_mul(&ninv)?;
        let v = (-&self.v).checked_mul(&ninv)?;
        Self::rebuild(u, v, self.delta.clone())
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, ExactError> {
        self.checked_mul(&o.inv()?)
    }

    fn rebuild(u: BaseScalar, v: BaseScalar, delta: BaseScalar) -> Result<Self, ExactError> {
        if v.is_zero() {
            return Ok(Self::from_scalar(u));
        }
        let canonical = delta.is_rational();
        Ok(QuadSurd { u, v, delta, canonical })
    }

    /// Galois conjugate over `K`: `√Δ ↦ −√Δ`.
    pub fn galois_conjugate(&self) -> Self {
        if !self.is_irrational() {
            return self.clone();
        }
        QuadSurd { u: self.u.clone(), v: -&self.v, delta: self.delta.clone(), canonical: self.canonical }
    }

    /// Complex conjugation of the embedded value (identity on real values).
    pub fn complex_conjugate(&self) -> Result<Self, ExactError> {
        if !self.is_irrational() {
            return Ok(Self::from_scalar(self.u.conj()));
        }
        if !self.delta.is_rational() {
            return Err(ExactError::NotReal);
        }
        let v = if self.delta.re.is_negative() { -self.v.conj() } else { self.v.conj() };
        Ok(QuadSurd { u: self.u.conj(), v, delta: self.delta.clone(), canonical: self.canonical })
    }

    fn sqrt_delta_c64(&self) -> Complex64 {
        self.delta.to_c64().sqrt()
    }

    pub fn to_c64(&self) -> Complex64 {
        if !self.is_irrational() {
            return self.u.to_c64();
        }
        self.u.to_c64() + self.v.to_c64() * self.sqrt_delta_c64()
    }

    /// Real embedding.  For real values this is accurate to a few ulps even
    /// under heavy cancellation, since `u + v√Δ` is rewritten as
    /// `(u² − v²Δ)/(u − v√Δ)` when the two terms nearly cancel.
    pub fn to_f64(&self) -> f64 {
        if !self.is_real() {
            return self.to_c64().re;
        }
        if !self.is_irrational() {
            return self.u.to_f64();
        }
        let u = self.u.to_f64();
        let w = self.v.to_f64() * ratio_to_f64(&self.delta.re).sqrt();
        if u != 0.0 && w != 0.0 && u.signum() != w.signum() {
            let n = ratio_to_f64(&self.norm_k().re);
            return n / (u - w);
        }
        u + w
    }

    /// Exact sign of a real surd.
    pub fn signum(&self) -> Result<i32, ExactError> {
        if !self.is_real() {
            return Err(ExactError::NotReal);
        }
        let su = self.u.signum_real();
        if !self.is_irrational() {
            return Ok(su);
        }
        let sv = self.v.signum_real();
        if su == sv || su == 0 {
            return Ok(sv);
        }
        // opposite signs: compare u² with v²Δ
        let uu = &self.u.re * &self.u.re;
        let vv = &self.v.re * &self.v.re * &self.delta.re;
        Ok(if uu > vv { su } else { sv })
    }

    pub fn cmp_real(&self, o: &Self) -> Result<Ordering, ExactError> {
        Ok(match self.checked_sub(o)?.signum()? {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    /// Complexity `h = 2/|x − x^σ|`; `h(x^σ) = h(x)`.
    pub fn complexity_h(&self) -> Result<Complexity, ExactError> {
        if !self.is_irrational() {
            return Err(ExactError::NotIrrational);
        }
        // x − x^σ = 2v√Δ, so h² = 1/(|v|²·|Δ|)
        let vn = self.v.norm();
        if self.delta.is_rational() {
            let h_sq = (vn * self.delta.re.abs()).recip();
            let value = ratio_to_f64(&h_sq).sqrt();
            Ok(Complexity { h_sq: Some(h_sq), value })
        } else {
            let diff = self.v.to_c64() * self.sqrt_delta_c64() * 2.0;
            Ok(Complexity { h_sq: None, value: 2.0 / diff.norm() })
        }
    }

    /// Primitive integral minimal polynomial `(A, B, C)` with `A > 0`.
    pub fn min_poly(&self) -> Result<(BigInt, BigInt, BigInt), ExactError> {
        if self.base_m() != 0 {
            return Err(ExactError::ComplexBase);
        }
        if !self.is_irrational() {
            return Err(ExactError::NotIrrational);
        }
        let u = &self.u.re;
        let b = -(u * BigRational::from_integer(2.into()));
        let c = u * u - &self.v.re * &self.v.re * &self.delta.re;
        let den = b.denom().lcm(c.denom());
        let a = den.clone();
        let bi = (b * q_of(&den)).to_integer();
        let ci = (c * q_of(&den)).to_integer();
        let g = a.gcd(&bi).gcd(&ci);
        Ok((a / &g, bi / &g, ci / &g))
    }

    /// Naive height: the largest coefficient of the primitive minimal polynomial.
    pub fn naive_height(&self) -> Result<BigInt, ExactError> {
        let (a, b, c) = self.min_poly()?;
        Ok(a.abs().max(b.abs()).max(c.abs()))
    }

    /// The primitive indefinite form `(a,b,c)` whose first root
    /// `(−b+√D)/(2a)` is `self`.  The form of `x^σ` is the negated form.
    pub fn form(&self) -> Result<BQForm, ExactError> {
        if !self.is_real() {
            return Err(ExactError::NotReal);
        }
        let (a, b, c) = self.min_poly()?;
        let f = BQForm::new(a, b, c)?;
        Ok(if self.v.re.is_positive() { f } else { f.neg() })
    }

    /// Canonical text `(p+q*sqrt(D))/r` (real or rational base only).
    pub fn to_text(&self) -> String {
        let d = if self.is_irrational() { self.delta.re.to_integer() } else { BigInt::one() };
        let r = self.u.re.denom().lcm(self.v.re.denom());
        let p = (&self.u.re * q_of(&r)).to_integer();
        let q = (&self.v.re * q_of(&r)).to_integer();
        let sign = if q.is_negative() { "-" } else { "+" };
        format!("({}{}{}*sqrt({}))/{}", p, sign, q.abs(), d, r)
    }

    /// Parse `(p+q*sqrt(D))/r` and the obvious abbreviations such as
    /// `sqrt(2)`, `(1+sqrt(5))/2`, `-3*sqrt(7)` or a plain integer.
    pub fn parse(text: &str) -> Result<Self, ExactError> {
        let err = || ExactError::Parse(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (inner, r) = match s.rfind(")/") {
            Some(k) if s.starts_with('(') => {
                let r: BigInt = s[k + 2..].parse().map_err(|_| err())?;
                (s[1..k].to_string(), r)
            }
            _ => (s.clone(), BigInt::one()),
        };
        let inner = inner.as_str();
        let Some(k) = inner.find("sqrt(") else {
            let p: BigInt = inner.parse().map_err(|_| err())?;
            return Self::from_big(&p, &BigInt::zero(), &BigInt::one(), &r);
        };
        let tail = &inner[k + 5..];
        let d: BigInt = tail.strip_suffix(')').ok_or_else(err)?.parse().map_err(|_| err())?;
        let seg = &inner[..k];
        let split = seg.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').last();
        let (p_txt, q_txt) = match split {
            Some((j, _)) => (&seg[..j], &seg[j..]),
            None => ("", seg),
        };
        let p: BigInt = if p_txt.is_empty() { BigInt::zero() } else { p_txt.parse().map_err(|_| err())? };
        let q_txt = q_txt.strip_suffix('*').unwrap_or(q_txt);
        let q: BigInt = match q_txt {
            "" | "+" => BigInt::one(),
            "-" => -BigInt::one(),
            t => t.parse().map_err(|_| err())?,
        };
        Self::from_big(&p, &q, &d, &r)
    }
}

impl FromStr for QuadSurd {
    type Err = ExactError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        QuadSurd::parse(s)
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base_m() == 0 && self.delta.is_rational() {
            f.write_str(&self.to_text())
        } else {
            write!(f, "{}+({})*sqrt({})", self.u, self.v, self.delta)
        }
    }
}

macro_rules! surd_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for &QuadSurd {
            type Output = QuadSurd;
            fn $method(self, rhs: &QuadSurd) -> QuadSurd {
                self.$checked(rhs).expect("incompatible quadratic surds")
            }
        }
        impl $tr for QuadSurd {
            type Output = QuadSurd;
            fn $method(self, rhs: QuadSurd) -> QuadSurd {
                (&self).$method(&rhs)
            }
        }
    };
}

surd_binop!(Add, add, checked_add);
surd_binop!(Sub, sub, checked_sub);
surd_binop!(Mul, mul, checked_mul);

impl Neg for &QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd { u: -&self.u, v: -&self.v, delta: self.delta.clone(), canonical: self.canonical }
    }
}

impl Neg for QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        -&self
    }
}
