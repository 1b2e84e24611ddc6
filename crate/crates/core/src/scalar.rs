//! Exact scalar fields and half-integer labels.

use std::fmt::{self, Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// A field of exact numbers that every coefficient in the engine lives in.
///
/// Implemented for arbitrary-precision rationals and for the fixed-width
/// `Ratio<i64>` / `Ratio<i128>` types. No floating-point implementation is
/// provided: every check compares for exact equality.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn from_int(value: i64) -> Self {
        Self::from_ratio(value, 1)
    }

    fn to_big_rational(&self) -> BigRational;

    /// `None` when the value does not fit the representation.
    fn from_big_rational(value: &BigRational) -> Option<Self>;

    fn sign_of(negative: bool) -> Self {
        if negative {
            -Self::one()
        } else {
            Self::one()
        }
    }
}

impl Scalar for BigRational {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn to_big_rational(&self) -> BigRational {
        self.clone()
    }

    fn from_big_rational(value: &BigRational) -> Option<Self> {
        Some(value.clone())
    }
}

macro_rules! fixed_ratio_scalar {
    ($int:ty, $to:ident) => {
        impl Scalar for Ratio<$int> {
            fn from_ratio(numer: i64, denom: i64) -> Self {
                Ratio::new(numer as $int, denom as $int)
            }

            fn to_big_rational(&self) -> BigRational {
                BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }

            fn from_big_rational(value: &BigRational) -> Option<Self> {
                Some(Ratio::new(value.numer().$to()?, value.denom().$to()?))
            }
        }
    };
}

fixed_ratio_scalar!(i64, to_i64);
fixed_ratio_scalar!(i128, to_i128);

/// Parse `p/q` or `p` into any exact scalar. Decimal input is rejected.
pub fn parse_scalar<T: Scalar>(text: &str) -> Result<T, ParseError> {
    let text = text.trim();
    let bad = || ParseError::Rational(text.to_string());
    if text.is_empty() || text.contains('.') || text.contains(char::is_whitespace) {
        return Err(bad());
    }
    let value = match text.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p).map_err(|_| bad())?;
            let q = BigInt::from_str(q).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            BigRational::new(p, q)
        }
        None => BigRational::from_integer(BigInt::from_str(text).map_err(|_| bad())?),
    };
    T::from_big_rational(&value).ok_or_else(bad)
}

/// A value in `½ℤ`, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfInteger(i64);

impl HalfInteger {
    pub const ZERO: HalfInteger = HalfInteger(0);

    pub const fn from_twice(twice: i64) -> Self {
        HalfInteger(twice)
    }

    pub const fn from_int(value: i64) -> Self {
        HalfInteger(2 * value)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_scalar<T: Scalar>(self) -> T {
        T::from_ratio(self.0, 2)
    }
}

impl Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInteger {
    type Err = ParseError;

    /// Accepts `p/2` or an integer `p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ParseError::HalfInteger(s.to_string());
        match s.split_once('/') {
            Some((p, "2")) => p.parse::<i64>().map(HalfInteger).map_err(|_| bad()),
            Some(_) => Err(bad()),
            None => s
                .parse::<i64>()
                .ok()
                .and_then(|v| v.checked_mul(2))
                .map(HalfInteger)
                .ok_or_else(bad),
        }
    }
}

/// `(-1)^k` as a scalar.
pub fn parity_sign<T: Scalar>(k: i64) -> T {
    T::sign_of(k.rem_euclid(2) == 1)
}

/// Falling factorial `x (x-1) ... (x-k+1)`, with `k = 0` giving 1.
pub fn falling_factorial<T: Scalar>(x: i64, k: u32) -> T {
    (0..k as i64).fold(T::one(), |acc, i| acc * T::from_int(x - i))
}

/// Polynomial binomial coefficient `C(x, k) = x^(k falling) / k!`, valid for negative `x`.
pub fn binomial<T: Scalar>(x: i64, k: u32) -> T {
    falling_factorial::<T>(x, k) / factorial::<T>(k)
}

pub fn factorial<T: Scalar>(k: u32) -> T {
    (1..=k as i64).fold(T::one(), |acc, i| acc * T::from_int(i))
}

/// Kronecker delta as a scalar.
pub fn delta<T: Scalar>(cond: bool) -> T {
    if cond {
        T::one()
    } else {
        T::zero()
    }
}
