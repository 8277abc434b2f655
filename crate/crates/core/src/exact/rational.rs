use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_int(v: i64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, other: &Rational) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &other.0))
    }

    pub(crate) fn div_int(&self, d: &BigInt) -> Self {
        Rational(&self.0 / BigRational::from_integer(d.clone()))
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational(BigRational::from_integer(v))
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v)
    }
}

impl From<u64> for Rational {
    fn from(v: u64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"p"` or `"p/q"`; the result is reduced.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            None => Ok(Rational::from(BigInt::from_str(s).map_err(|_| bad())?)),
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
                let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
                Rational::from_big(p, q)
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    /// Panics on a zero divisor; use [`Rational::checked_div`] when that can happen.
    fn div(self, rhs: Rational) -> Rational {
        self.checked_div(&rhs).expect("rational division by zero")
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_forms() {
        assert_eq!(Rational::new(6, 4).to_string(), "3/2");
        assert_eq!(Rational::new(-6, 3).to_string(), "-2");
        assert_eq!(Rational::new(3, -6).to_string(), "-1/2");
        assert_eq!(Rational::zero().to_string(), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert!("1/2/3".parse::<Rational>().is_err());
        assert_eq!("4/6".parse::<Rational>().unwrap(), Rational::new(2, 3));
    }

    proptest! {
        #[test]
        fn string_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
            let r = Rational::new(p, q);
            let s = r.to_string();
            prop_assert_eq!(s.parse::<Rational>().unwrap(), r.clone());
            let json = serde_json::to_string(&r).unwrap();
            prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap().to_string(), s);
        }
    }
}
