//! The coefficient field abstraction.
//!
//! Three domains implement [`Scalar`]: binary floats (`f64`), exact rationals
//! ([`Rational`]) and univariate rational functions in the Laplace variable s
//! ([`crate::ratfun::RationalFunction`]).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{GaError, Result};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Field operations required of multivector coefficients.
///
/// The axioms hold exactly for the rational domains and approximately for
/// floats. `is_zero` is exact; float code paths that want a tolerance use
/// `is_zero_tol`.
pub trait Scalar:
    Clone + PartialEq + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// Parse a decimal literal ("425", "0.0289", "-3.5") or a fraction ("2/5").
    /// In the exact domains terminating decimals are represented exactly.
    fn from_decimal_text(text: &str) -> Result<Self>;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, rhs: &Self) -> Result<Self>;

    fn is_zero(&self) -> bool;
    fn is_zero_tol(&self, _tol: f64) -> bool {
        self.is_zero()
    }
    fn abs(&self) -> Self;
    /// Integer value if the scalar is an exact integer.
    fn to_i64(&self) -> Option<i64>;

    /// Pivot magnitude for Gaussian elimination. Exact domains only need a
    /// zero/nonzero distinction; the float domain overrides this with |x| so
    /// elimination does partial pivoting.
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }

    fn to_json(&self) -> serde_json::Value;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_decimal_text(text: &str) -> Result<Self> {
        if let Some((n, d)) = text.split_once('/') {
            let n: f64 = n.trim().parse().map_err(|_| GaError::BadNumber(text.into()))?;
            let d: f64 = d.trim().parse().map_err(|_| GaError::BadNumber(text.into()))?;
            if d == 0.0 {
                return Err(GaError::DivisionByZero);
            }
            return Ok(n / d);
        }
        text.parse().map_err(|_| GaError::BadNumber(text.into()))
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        if *rhs == 0.0 {
            return Err(GaError::DivisionByZero);
        }
        Ok(self / rhs)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_zero_tol(&self, tol: f64) -> bool {
        f64::abs(*self) <= tol
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn to_i64(&self) -> Option<i64> {
        if self.fract() == 0.0 && f64::abs(*self) < 9.0e15 {
            Some(*self as i64)
        } else {
            None
        }
    }
    fn pivot_weight(&self) -> f64 {
        f64::abs(*self)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self)
    }
}

/// Parse a decimal or fraction literal into an exact rational.
pub fn rational_from_text(text: &str) -> Result<Rational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| GaError::BadNumber(text.into()))?;
        let d: BigInt = d.trim().parse().map_err(|_| GaError::BadNumber(text.into()))?;
        if d.is_zero() {
            return Err(GaError::DivisionByZero);
        }
        return Ok(Rational::new(n, d));
    }
    let (sign, body) = match text.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(GaError::BadNumber(text.into()));
    }
    let digits_ok = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !(int_part.is_empty() || digits_ok(int_part)) || !(frac_part.is_empty() || digits_ok(frac_part)) {
        return Err(GaError::BadNumber(text.into()));
    }
    let mut num: BigInt = if int_part.is_empty() {
        BigInt::zero()
    } else {
        int_part.parse().map_err(|_| GaError::BadNumber(text.into()))?
    };
    let mut den = BigInt::one();
    if !frac_part.is_empty() {
        let frac: BigInt = frac_part.parse().map_err(|_| GaError::BadNumber(text.into()))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        num = num * &scale + frac;
        den = scale;
    }
    Ok(Rational::new(num * BigInt::from(sign), den))
}

impl Scalar for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from(BigInt::from(v))
    }
    fn from_decimal_text(text: &str) -> Result<Self> {
        rational_from_text(text)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        if num_traits::Zero::is_zero(rhs) {
            return Err(GaError::DivisionByZero);
        }
        Ok(self / rhs)
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            use num_traits::ToPrimitive;
            self.numer().to_i64()
        } else {
            None
        }
    }
    fn to_json(&self) -> serde_json::Value {
        if self.is_integer() {
            serde_json::json!(self.numer().to_string())
        } else {
            serde_json::json!(format!("{}/{}", self.numer(), self.denom()))
        }
    }
}
