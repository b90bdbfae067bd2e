//! Real scalars used by the classical models.
//!
//! Two modes exist: exact rationals (always normalised, positive denominator,
//! courtesy of `num-rational`) and `f64`. Cutpoint decisions are strict in the
//! exact mode; in float mode a value within a tolerance band of the cutpoint
//! is reported as ambiguous instead of being decided.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Default half-width of the ambiguity band around a float cutpoint.
pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    Rational,
    Float64,
}

impl ScalarMode {
    pub fn name(self) -> &'static str {
        match self {
            ScalarMode::Rational => "rational",
            ScalarMode::Float64 => "float64",
        }
    }
}

/// Outcome of comparing an acceptance value against a strict cutpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decision {
    Accept,
    Reject,
    /// Float value within the band; `distance` is `|f − cutpoint|`.
    Boundary { distance: f64 },
}

impl Decision {
    pub fn accepted(self) -> Option<bool> {
        match self {
            Decision::Accept => Some(true),
            Decision::Reject => Some(false),
            Decision::Boundary { .. } => None,
        }
    }
}

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    const MODE: ScalarMode;

    fn to_f64(&self) -> f64;

    /// Exact rational denoted by this value. Floats map to their dyadic value.
    fn to_rational(&self) -> Result<Rational>;

    fn from_rational(r: &Rational) -> Self;

    fn from_f64(x: f64) -> Result<Self>;

    fn abs(&self) -> Self;

    /// `|a − b| ≤ tol` in float mode, `a == b` in exact mode.
    fn near(&self, other: &Self, tol: f64) -> bool;

    fn decide(value: &Self, cutpoint: &Self, band: f64) -> Decision;
}

impl Scalar for f64 {
    const MODE: ScalarMode = ScalarMode::Float64;

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Result<Rational> {
        Rational::from_float(*self).ok_or(Error::NonFinite(*self))
    }

    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }

    fn from_f64(x: f64) -> Result<Self> {
        if x.is_finite() {
            Ok(x)
        } else {
            Err(Error::NonFinite(x))
        }
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn near(&self, other: &Self, tol: f64) -> bool {
        (self - other).abs() <= tol
    }

    fn decide(value: &Self, cutpoint: &Self, band: f64) -> Decision {
        let distance = (value - cutpoint).abs();
        if distance <= band {
            Decision::Boundary { distance }
        } else if value > cutpoint {
            Decision::Accept
        } else {
            Decision::Reject
        }
    }
}

impl Scalar for Rational {
    const MODE: ScalarMode = ScalarMode::Rational;

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn to_rational(&self) -> Result<Rational> {
        Ok(self.clone())
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_f64(x: f64) -> Result<Self> {
        Rational::from_float(x).ok_or(Error::NonFinite(x))
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn near(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn decide(value: &Self, cutpoint: &Self, _band: f64) -> Decision {
        if value > cutpoint {
            Decision::Accept
        } else {
            Decision::Reject
        }
    }
}

/// Nearest-ish `f64` for a rational, robust to numerators/denominators that
/// overflow `f64` individually.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let shift = r.numer().bits().max(r.denom().bits()) as i64 - 60;
    let (n, d) = if shift > 0 {
        (r.numer() >> shift as usize, r.denom() >> shift as usize)
    } else {
        (r.numer().clone(), r.denom().clone())
    };
    match (n.to_f64(), d.to_f64()) {
        (Some(n), Some(d)) if d != 0.0 => n / d,
        _ => {
            // denominator vanished under the shift: magnitude is huge
            if r.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        }
    }
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Other(format!("malformed rational `{text}`"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Other(format!("zero denominator in `{text}`")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = text.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Formats as `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn half<S: Scalar>() -> S {
    S::from_rational(&ratio(1, 2))
}
