//! Scalar arithmetic shared by every kernel.
//!
//! Two modes exist: exact rationals (arbitrary-precision integer
//! numerator/denominator, always in lowest terms with positive
//! denominator) and 64-bit floats. A solve picks one mode up front by
//! instantiating the generic kernels with the matching type; there is no
//! process-global mode switch.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact rational scalar. `num_rational` keeps the fraction reduced and
/// the denominator positive, which is exactly the invariant we need.
pub type Rational = num_rational::BigRational;

/// Field element the solvers are generic over.
///
/// Implementations must never let a NaN escape: every operation either
/// produces a finite value or the caller converts the failure into an
/// error via [`Scalar::is_finite`].
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True when arithmetic is exact. Drives pivot selection (first
    /// nonzero vs. partial pivoting) and tolerance semantics (exact zero
    /// vs. thresholds).
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    /// Nearest representable value; used for float-mode thresholds only.
    fn from_f64_lossy(v: f64) -> Self;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    /// False for NaN or infinite floats; always true for rationals.
    fn is_finite(&self) -> bool;
    fn to_f64(&self) -> f64;
    /// Parse a number token: optional sign, then integer digits,
    /// `digits.digits`, or `p/q`. No exponents, no locale variation.
    fn parse_number(token: &str) -> Option<Self>;
    /// Mode default feasibility tolerance: exact zero or 1e-9.
    fn default_tol() -> Self;
}

/// Splits a token into (negative?, payload) and checks the payload is
/// made of digits plus at most one '.' or '/'.
fn split_sign(token: &str) -> Option<(bool, &str)> {
    let (neg, rest) = match token.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, token.strip_prefix('+').unwrap_or(token)),
    };
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit() || c == '.' || c == '/') {
        return None;
    }
    Some((neg, rest))
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        num_traits::Zero::zero()
    }

    fn one() -> Self {
        num_traits::One::one()
    }

    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_f64_lossy(v: f64) -> Self {
        Rational::from_float(v).unwrap_or_else(<Self as Scalar>::zero)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse_number(token: &str) -> Option<Self> {
        let (neg, rest) = split_sign(token)?;
        let value = if let Some((num, den)) = rest.split_once('/') {
            if num.is_empty() || den.is_empty() || num.contains('.') || den.contains('.') {
                return None;
            }
            let num: BigInt = num.parse().ok()?;
            let den: BigInt = den.parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Rational::new(num, den)
        } else if let Some((int, frac)) = rest.split_once('.') {
            if int.is_empty() || frac.is_empty() || frac.contains('.') {
                return None;
            }
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let num: BigInt = int.parse::<BigInt>().ok()? * &scale + frac.parse::<BigInt>().ok()?;
            Rational::new(num, scale)
        } else {
            Rational::from_integer(rest.parse().ok()?)
        };
        Some(if neg { -value } else { value })
    }

    fn default_tol() -> Self {
        <Self as Scalar>::zero()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_f64_lossy(v: f64) -> Self {
        v
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse_number(token: &str) -> Option<Self> {
        let (neg, rest) = split_sign(token)?;
        let value = if let Some((num, den)) = rest.split_once('/') {
            if num.is_empty() || den.is_empty() || num.contains('.') || den.contains('.') {
                return None;
            }
            let num: f64 = num.parse().ok()?;
            let den: f64 = den.parse().ok()?;
            if den == 0.0 {
                return None;
            }
            num / den
        } else {
            if rest.starts_with('.') || rest.ends_with('.') || rest.matches('.').count() > 1 {
                return None;
            }
            rest.parse().ok()?
        };
        if !value.is_finite() {
            return None;
        }
        Some(if neg { -value } else { value })
    }

    fn default_tol() -> Self {
        1e-9
    }
}
