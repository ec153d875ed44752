//! Exact rational scalars and the extended real line.
//!
//! Every quantity in this crate is a [`Q`]: an arbitrary-precision rational
//! kept in canonical form (positive denominator, reduced fraction). There is
//! no epsilon anywhere; all comparisons are exact. Suprema and infima over
//! possibly unbounded or empty sets live in [`ExtReal`], which adds `+inf`
//! and `-inf` to the rationals.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar.
///
/// Wraps [`BigRational`], which maintains the canonical-form invariants
/// (denominator > 0, gcd of numerator and denominator = 1). Serialized as
/// the string `"p/q"`, or `"p"` when the denominator is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Q(BigRational);

impl Q {
    pub fn zero() -> Self {
        Q(BigRational::zero())
    }

    pub fn one() -> Self {
        Q(BigRational::one())
    }

    /// Builds `numer/denom`. Panics on a zero denominator; fallible input
    /// goes through [`Q::from_str`] instead.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Q(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(n: i64) -> Self {
        Q(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Q(BigRational::from_integer(n))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Q(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Q(self.0.recip())
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn cmp_zero(&self) -> Ordering {
        if self.0.is_zero() {
            Ordering::Equal
        } else if self.0.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed rational `{input}`: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

impl FromStr for Q {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let bad = |reason| ParseRationalError {
            input: s.to_string(),
            reason,
        };
        let s = s.trim();
        let (numer_str, denom_str) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let numer: BigInt = numer_str.parse().map_err(|_| bad("invalid numerator"))?;
        let denom: BigInt = match denom_str {
            Some(d) => d.parse().map_err(|_| bad("invalid denominator"))?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(bad("zero denominator"));
        }
        Ok(Q(BigRational::new(numer, denom)))
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Self {
        Q::from_int(n)
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct QVisitor;

        impl de::Visitor<'_> for QVisitor {
            type Value = Q;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string \"p/q\" or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Q, E> {
                v.parse().map_err(de::Error::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Q, E> {
                Ok(Q::from_int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Q, E> {
                Ok(Q::from_bigint(BigInt::from(v)))
            }
        }

        deserializer.deserialize_any(QVisitor)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Q {
            type Output = Q;
            fn $method(self, rhs: Q) -> Q {
                Q((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Q> for &Q {
            type Output = Q;
            fn $method(self, rhs: &Q) -> Q {
                Q((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Q> for Q {
            type Output = Q;
            fn $method(self, rhs: &Q) -> Q {
                Q((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Q> for &Q {
            type Output = Q;
            fn $method(self, rhs: Q) -> Q {
                Q((&self.0).$method(rhs.0))
            }
        }
    };
}

impl_binop!(Add, add);
impl_binop!(Sub, sub);
impl_binop!(Mul, mul);

impl Div for Q {
    type Output = Q;
    fn div(self, rhs: Q) -> Q {
        assert!(!rhs.is_zero(), "division by zero");
        Q(self.0 / rhs.0)
    }
}

impl Div<&Q> for &Q {
    type Output = Q;
    fn div(self, rhs: &Q) -> Q {
        assert!(!rhs.is_zero(), "division by zero");
        Q(&self.0 / &rhs.0)
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-&self.0)
    }
}

impl AddAssign<&Q> for Q {
    fn add_assign(&mut self, rhs: &Q) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Q> for Q {
    fn sub_assign(&mut self, rhs: &Q) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Q> for Q {
    fn mul_assign(&mut self, rhs: &Q) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Q {
    fn sum<I: Iterator<Item = Q>>(iter: I) -> Q {
        iter.fold(Q::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Q> for Q {
    fn sum<I: Iterator<Item = &'a Q>>(iter: I) -> Q {
        iter.fold(Q::zero(), |acc, x| acc + x)
    }
}

/// Extended real value: a rational, `+inf`, or `-inf`.
///
/// The variant order gives the total order `-inf < finite < +inf`.
/// `+inf + (-inf)` is rejected rather than given a convention, matching the
/// properness assumptions of the calculus: proper functions never take the
/// value `-inf`, and `-inf` only appears as the supremum over an empty set
/// or the marker of an unbounded infimum.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtReal {
    MinusInfinity,
    Finite(Q),
    PlusInfinity,
}

impl ExtReal {
    pub fn finite(q: Q) -> Self {
        ExtReal::Finite(q)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Q> {
        match self {
            ExtReal::Finite(q) => Some(q),
            _ => None,
        }
    }

    /// Exact addition; `+inf + (-inf)` is a rejected operation.
    pub fn try_add(&self, other: &ExtReal) -> Result<ExtReal> {
        use ExtReal::*;
        Ok(match (self, other) {
            (Finite(a), Finite(b)) => Finite(a + b),
            (PlusInfinity, MinusInfinity) | (MinusInfinity, PlusInfinity) => {
                return Err(Error::IndeterminateSum)
            }
            (PlusInfinity, _) | (_, PlusInfinity) => PlusInfinity,
            (MinusInfinity, _) | (_, MinusInfinity) => MinusInfinity,
        })
    }

    /// Scales by a strictly positive rational.
    pub fn scale_positive(&self, t: &Q) -> ExtReal {
        assert!(t.is_positive(), "scale factor must be positive");
        match self {
            ExtReal::Finite(q) => ExtReal::Finite(q * t),
            other => other.clone(),
        }
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        match self {
            ExtReal::MinusInfinity => ExtReal::PlusInfinity,
            ExtReal::Finite(q) => ExtReal::Finite(-q),
            ExtReal::PlusInfinity => ExtReal::MinusInfinity,
        }
    }
}

impl From<Q> for ExtReal {
    fn from(q: Q) -> Self {
        ExtReal::Finite(q)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::MinusInfinity => f.write_str("-inf"),
            ExtReal::Finite(q) => write!(f, "{q}"),
            ExtReal::PlusInfinity => f.write_str("+inf"),
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        match s.as_str() {
            "+inf" | "inf" => Ok(ExtReal::PlusInfinity),
            "-inf" => Ok(ExtReal::MinusInfinity),
            other => other
                .parse::<Q>()
                .map(ExtReal::Finite)
                .map_err(de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn canonical_form() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(-2, -4), q(1, 2));
        assert_eq!(q(2, -4), q(-1, 2));
        assert!(q(2, -4).denom() > &BigInt::zero());
    }

    #[test]
    fn arithmetic_is_exact() {
        let third = q(1, 3);
        let sum = &third + &third + third;
        assert_eq!(sum, Q::one());
        assert_eq!(q(1, 6) - q(1, 2), q(-1, 3));
        assert_eq!(q(3, 7) * q(7, 3), Q::one());
        assert_eq!(q(1, 2) / q(1, 4), Q::from_int(2));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("5/3".parse::<Q>().unwrap(), q(5, 3));
        assert_eq!("-7".parse::<Q>().unwrap(), Q::from_int(-7));
        assert_eq!("4/2".parse::<Q>().unwrap().to_string(), "2");
        assert_eq!(q(-1, 2).to_string(), "-1/2");
        assert!("1/0".parse::<Q>().is_err());
        assert!("a/b".parse::<Q>().is_err());
    }

    #[test]
    fn serde_round_trip() {
        let v: Q = serde_json::from_str("\"3/4\"").unwrap();
        assert_eq!(v, q(3, 4));
        assert_eq!(serde_json::to_string(&v).unwrap(), "\"3/4\"");
        let n: Q = serde_json::from_str("-3").unwrap();
        assert_eq!(n, Q::from_int(-3));
    }

    #[test]
    fn ext_real_ordering() {
        assert!(ExtReal::MinusInfinity < ExtReal::Finite(q(-1000, 1)));
        assert!(ExtReal::Finite(q(1000, 1)) < ExtReal::PlusInfinity);
        assert!(ExtReal::Finite(q(1, 3)) < ExtReal::Finite(q(1, 2)));
    }

    #[test]
    fn ext_real_addition() {
        use ExtReal::*;
        let fin = |n, d| Finite(q(n, d));
        assert_eq!(fin(1, 2).try_add(&fin(1, 3)).unwrap(), fin(5, 6));
        assert_eq!(fin(1, 2).try_add(&PlusInfinity).unwrap(), PlusInfinity);
        assert_eq!(MinusInfinity.try_add(&fin(0, 1)).unwrap(), MinusInfinity);
        assert_eq!(
            PlusInfinity.try_add(&MinusInfinity),
            Err(Error::IndeterminateSum)
        );
    }

    #[test]
    fn ext_real_serde() {
        assert_eq!(
            serde_json::to_string(&ExtReal::PlusInfinity).unwrap(),
            "\"+inf\""
        );
        let v: ExtReal = serde_json::from_str("\"-inf\"").unwrap();
        assert_eq!(v, ExtReal::MinusInfinity);
        let f: ExtReal = serde_json::from_str("\"2/5\"").unwrap();
        assert_eq!(f, ExtReal::Finite(q(2, 5)));
    }
}
