//! Elements of the base field `K`: either `ℚ` (`m = 0`) or `ℚ(i√m)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactError;

/// `re + im·i√m` with rational coefficients.
///
/// `m` is a non-negative squarefree integer; `m = 0` means the element lives
/// in `ℚ` and `im` is forced to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseScalar {
    pub re: BigRational,
    pub im: BigRational,
    pub m: u64,
}

impl BaseScalar {
    pub fn rational(q: BigRational) -> Self {
        BaseScalar { re: q, im: BigRational::zero(), m: 0 }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::rational(BigRational::from_integer(n))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// Element of `ℚ(i√m)`.  Panics if `m` is not squarefree.
    pub fn new(re: BigRational, im: BigRational, m: u64) -> Self {
        assert!(m == 0 || is_squarefree(m), "m = {m} is not squarefree");
        if m == 0 {
            assert!(im.is_zero(), "imaginary coefficient with m = 0");
        }
        BaseScalar { re, im, m }
    }

    /// `i√m` itself.
    pub fn i_sqrt(m: u64) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), m)
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    /// True when the coefficients are integers (membership in `ℤ[i√m]`).
    ///
    /// For `m ≡ 3 (mod 4)` the ring of integers is slightly larger; callers
    /// that care use [`BaseScalar::is_algebraic_integer`].
    pub fn is_integral(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    /// Membership in `𝒪_K`.
    pub fn is_algebraic_integer(&self) -> bool {
        if self.m % 4 == 3 {
            let two = BigRational::from_integer(BigInt::from(2));
            let a = &self.re * &two;
            let b = &self.im * &two;
            a.is_integer() && b.is_integer() && (a.to_integer() - b.to_integer()) % 2 == BigInt::zero()
        } else {
            self.is_integral()
        }
    }

    /// Shared field parameter of two operands (a rational operand adopts the
    /// other's `m`).
    pub(crate) fn join_m(a: u64, b: u64) -> Result<u64, ExactError> {
        match (a, b) {
            (0, x) | (x, 0) => Ok(x),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(ExactError::FieldMismatch(x, y)),
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, ExactError> {
        let m = Self::join_m(self.m, o.m)?;
        Ok(BaseScalar { re: &self.re + &o.re, im: &self.im + &o.im, m }.normalized())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, ExactError> {
        let m = Self::join_m(self.m, o.m)?;
        let mq = BigRational::from_integer(BigInt::from(m));
        let re = &self.re * &o.re - &mq * &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        Ok(BaseScalar { re, im, m }.normalized())
    }

    /// Field norm to `ℚ`: `re² + m·im²` (the squared modulus).
    pub fn norm(&self) -> BigRational {
        let mq = BigRational::from_integer(BigInt::from(self.m));
        &self.re * &self.re + mq * &self.im * &self.im
    }

    /// Complex conjugation, `i√m ↦ −i√m`.
    pub fn conj(&self) -> Self {
        BaseScalar { re: self.re.clone(), im: -&self.im, m: self.m }
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let n = self.norm();
        Ok(BaseScalar { re: &self.re / &n, im: -&self.im / &n, m: self.m }.normalized())
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, ExactError> {
        self.checked_mul(&o.inv()?)
    }

    /// Drop the field tag once the imaginary part vanishes.
    fn normalized(mut self) -> Self {
        if self.im.is_zero() {
            self.m = 0;
        }
        self
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            ratio_to_f64(&self.re),
            ratio_to_f64(&self.im) * (self.m as f64).sqrt(),
        )
    }

    /// Real embedding; only meaningful when `is_rational()`.
    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.re)
    }

    pub fn signum_real(&self) -> i32 {
        if self.re.is_positive() {
            1
        } else if self.re.is_negative() {
            -1
        } else {
            0
        }
    }
}

/// Rational to double without the overflow of `numer/denom` conversion.
pub fn ratio_to_f64(q: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // scale both down to avoid overflow
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift_n = (nb - 60).max(0) as u64;
    let shift_d = (db - 60).max(0) as u64;
    let n = (q.numer() >> shift_n).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> shift_d).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi(shift_n as i32 - shift_d as i32)
}

pub fn is_squarefree(m: u64) -> bool {
    if m == 0 {
        return false;
    }
    let mut k = 2u64;
    while k.saturating_mul(k) <= m {
        if m % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr for &BaseScalar {
            type Output = BaseScalar;
            fn $method(self, rhs: &BaseScalar) -> BaseScalar {
                let f: fn(&BaseScalar, &BaseScalar) -> Result<BaseScalar, ExactError> = $body;
                f(self, rhs).expect("base scalars from different fields")
            }
        }
        impl $tr for BaseScalar {
            type Output = BaseScalar;
            fn $method(self, rhs: BaseScalar) -> BaseScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.checked_add(b));
forward_binop!(Mul, mul, |a, b| a.checked_mul(b));
forward_binop!(Sub, sub, |a, b| a.checked_add(&-b));

impl Neg for &BaseScalar {
    type Output = BaseScalar;
    fn neg(self) -> BaseScalar {
        BaseScalar { re: -&self.re, im: -&self.im, m: self.m }
    }
}

impl Neg for BaseScalar {
    type Output = BaseScalar;
    fn neg(self) -> BaseScalar {
        -&self
    }
}

impl fmt::Display for BaseScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{}+{}*isqrt({})", self.re, self.im, self.m)
        }
    }
}
