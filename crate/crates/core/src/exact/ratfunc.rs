use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// Quotient of polynomials in `nu` in canonical form: the denominator is monic
/// and coprime to the numerator, and zero is `0/1`. Structural equality is
/// therefore equality of functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = Polynomial::gcd(&num, &den);
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let lc = den.leading().expect("nonzero").recip()?;
        Ok(RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// Exact value at an integer point; a root of the denominator is a pole.
    pub fn eval(&self, n: i64) -> Result<Rational> {
        let x = Rational::from_int(n);
        let d = self.den.eval(&x);
        if d.is_zero() {
            return Err(Error::Pole(n));
        }
        self.num.eval(&x).checked_div(&d)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).expect("monic den");
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("product of nonzero denominators")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs.clone())
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl fmt::Display for RationalFunction {
    /// `num` when the denominator is 1, otherwise `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Polynomial::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl FromStr for RationalFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            let close = rest
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses: {s:?}")))?;
            let num: Polynomial = rest[..close].parse()?;
            let tail = rest[close + 1..].trim();
            if tail.is_empty() {
                return Ok(Self::from_poly(num));
            }
            let den = tail
                .strip_prefix('/')
                .map(str::trim)
                .and_then(|d| d.strip_prefix('('))
                .and_then(|d| d.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("expected (num)/(den): {s:?}")))?;
            Self::new(num, den.parse()?)
        } else {
            Ok(Self::from_poly(s.parse()?))
        }
    }
}
