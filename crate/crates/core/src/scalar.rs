//! Scalar arithmetic in two modes: exact rationals and double-precision floats.
//!
//! Every decomposition is generic over [`Scalar`], so a build is either fully
//! exact (`BigRational`) or fully floating-point (`f64`); the two cannot mix
//! inside one computation. Exact mode never rounds, which is what the rank
//! checks rely on.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which arithmetic a scalar type carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithMode {
    Exact,
    Float,
}

impl ArithMode {
    pub fn name(self) -> &'static str {
        match self {
            ArithMode::Exact => "exact",
            ArithMode::Float => "float",
        }
    }
}

impl Display for ArithMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Field-like scalar used throughout the decompositions.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn mode() -> ArithMode;

    fn from_biguint(v: &BigUint) -> Self;

    fn from_rational(q: &BigRational) -> Self;

    /// Parse from text. Exact mode accepts integers, `p/q` fractions and
    /// finite decimals; float mode accepts anything `f64` parses (finite).
    fn parse_text(s: &str) -> Result<Self>;

    fn to_f64(&self) -> f64;

    /// Exact rational view; `None` in float mode.
    fn as_rational(&self) -> Option<BigRational>;

    fn abs_val(&self) -> Self;

    /// Integer power with checked zero-to-negative-exponent.
    fn powi_checked(&self, k: i32) -> Result<Self>;

    fn recip_checked(&self) -> Result<Self>;

    /// Canonical text form used in serialized output.
    fn render(&self) -> String;
}

impl Scalar for BigRational {
    fn mode() -> ArithMode {
        ArithMode::Exact
    }

    fn from_biguint(v: &BigUint) -> Self {
        BigRational::from_integer(BigInt::from(v.clone()))
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn parse_text(s: &str) -> Result<Self> {
        parse_rational(s)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    fn as_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn abs_val(&self) -> Self {
        Signed::abs(self)
    }

    fn powi_checked(&self, k: i32) -> Result<Self> {
        if self.is_zero() && k < 0 {
            return Err(Error::InvalidValuation(format!(
                "0 raised to negative exponent {k}"
            )));
        }
        Ok(num_traits::Pow::pow(self.clone(), k))
    }

    fn recip_checked(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidValuation("reciprocal of zero".into()));
        }
        Ok(self.recip())
    }

    fn render(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Scalar for f64 {
    fn mode() -> ArithMode {
        ArithMode::Float
    }

    fn from_biguint(v: &BigUint) -> Self {
        v.to_f64().unwrap_or(f64::INFINITY)
    }

    fn from_rational(q: &BigRational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or_else(|| {
            if q.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    fn parse_text(s: &str) -> Result<Self> {
        let v: f64 = s.trim().parse().map_err(|e| Error::Parse {
            what: format!("float `{s}`"),
            detail: format!("{e}"),
        })?;
        if !v.is_finite() {
            return Err(Error::BadValue(format!("non-finite scalar `{s}`")));
        }
        Ok(v)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn as_rational(&self) -> Option<BigRational> {
        None
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn powi_checked(&self, k: i32) -> Result<Self> {
        if *self == 0.0 && k < 0 {
            return Err(Error::InvalidValuation(format!(
                "0 raised to negative exponent {k}"
            )));
        }
        Ok(self.powi(k))
    }

    fn recip_checked(&self) -> Result<Self> {
        if *self == 0.0 {
            return Err(Error::InvalidValuation("reciprocal of zero".into()));
        }
        Ok(self.recip())
    }

    fn render(&self) -> String {
        format!("{self}")
    }
}

/// Parse an exact rational from `p/q`, integer, or finite decimal notation.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let text = s.trim();
    let err = |detail: String| Error::Parse {
        what: format!("rational `{text}`"),
        detail,
    };
    if text.is_empty() {
        return Err(err("empty string".into()));
    }
    if let Some((num, den)) = text.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|e| err(format!("{e}")))?;
        let d: BigInt = den.trim().parse().map_err(|e| err(format!("{e}")))?;
        if d.is_zero() {
            return Err(err("zero denominator".into()));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let w: BigInt = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            whole.parse().map_err(|e| err(format!("{e}")))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("malformed decimal fraction".into()));
        }
        let f: BigInt = frac.parse().map_err(|e| err(format!("{e}")))?;
        let scale = num_traits::Pow::pow(BigInt::from(10u32), frac.len());
        let frac_part = BigRational::new(f, scale);
        let whole_part = BigRational::from_integer(w);
        return Ok(if negative {
            whole_part - frac_part
        } else {
            whole_part + frac_part
        });
    }
    let n: BigInt = text.parse().map_err(|e| err(format!("{e}")))?;
    Ok(BigRational::from_integer(n))
}
