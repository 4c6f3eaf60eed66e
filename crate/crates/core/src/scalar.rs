//! Exact scalar fields the engine computes over.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num::bigint::BigInt;
use num::traits::{Num, One, Zero};
use num::{BigRational, Complex};

/// An exact field. Every structure in the crate that only needs field
/// arithmetic is generic over this trait.
pub trait Scalar:
    Num + Clone + PartialEq + Debug + Display + std::ops::Neg<Output = Self> + Send + Sync + 'static
{
    fn from_i64(value: i64) -> Self;

    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }
}

impl Scalar for BigRational {
    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }
}

impl Scalar for num::rational::Rational64 {
    fn from_i64(value: i64) -> Self {
        num::rational::Rational64::from_integer(value)
    }
}

impl<T> Scalar for Complex<T>
where
    T: Scalar + PartialOrd,
{
    fn from_i64(value: i64) -> Self {
        Complex::new(T::from_i64(value), T::zero())
    }
}

/// Scalars that admit complex conjugation (identity on real fields).
pub trait Conjugate: Scalar {
    fn conj(&self) -> Self;
}

impl Conjugate for BigRational {
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl<T: Scalar + PartialOrd> Conjugate for Complex<T> {
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse rational from {0:?}")]
pub struct ParseRationalError(pub String);

/// Parses `"p/q"`, `"p"` or `"-p/q"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<BigRational, ParseRationalError> {
    let trimmed = text.trim();
    let err = || ParseRationalError(text.to_string());
    match trimmed.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p = BigInt::from_str(trimmed).map_err(|_| err())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

/// Shorthand for building small rationals in code and tests.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(p))
}

/// Canonical `p/q` rendering (`p` when integral).
pub fn format_rational(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}
