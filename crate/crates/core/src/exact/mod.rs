//! Exact scalars: rationals, polynomials and rational functions in the
//! indeterminate `nu` (standing for the ground-set size `n`), and binomials.

mod binom;
mod poly;
mod ratfunc;
mod rational;

use std::fmt::{Debug, Display};

use num_bigint::BigInt;

pub use binom::{binom, binom_poly, binom_u64};
pub(crate) use binom::binom_unchecked;
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use rational::Rational;

use crate::error::Result;

/// Exact field element usable as a Bose-Mesner coefficient.
pub trait Scalar: Clone + PartialEq + Debug + Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Result<Self>;

    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }

    fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_int(v))
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
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
    fn div(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }
}

impl Scalar for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn from_rational(r: Rational) -> Self {
        RationalFunction::constant(r)
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
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
    fn div(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }
}

/// `C(n + shift, b)` for a ground-set size that is either a fixed integer or
/// the indeterminate `nu`. Formulas written against this trait produce both
/// the numeric and the symbolic coefficients from one definition.
pub(crate) trait BinomialInN<S: Scalar> {
    fn binom_n(&self, shift: i64, b: usize) -> Result<S>;

    /// The fixed `n`, if any (used to label errors).
    fn fixed_n(&self) -> Option<usize>;
}

/// A fixed integer ground-set size.
pub(crate) struct AtN(pub usize);

impl BinomialInN<Rational> for AtN {
    fn binom_n(&self, shift: i64, b: usize) -> Result<Rational> {
        binom(self.0 as i64 + shift, b as i64).map(Rational::from)
    }

    fn fixed_n(&self) -> Option<usize> {
        Some(self.0)
    }
}

/// The indeterminate `nu`.
pub(crate) struct Symbolic;

impl BinomialInN<RationalFunction> for Symbolic {
    fn binom_n(&self, shift: i64, b: usize) -> Result<RationalFunction> {
        Ok(RationalFunction::from_poly(binom_poly(shift, b)))
    }

    fn fixed_n(&self) -> Option<usize> {
        None
    }
}

/// Integers go out as JSON numbers when they fit in `u64`/`i64`, otherwise
/// as decimal strings.
pub(crate) fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    if let Ok(x) = u64::try_from(v) {
        s.serialize_u64(x)
    } else if let Ok(x) = i64::try_from(v) {
        s.serialize_i64(x)
    } else {
        s.collect_str(v)
    }
}

pub(crate) fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&Int(x))?;
    }
    seq.end()
}

struct Int<'a>(&'a BigInt);

impl serde::Serialize for Int<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ser_bigint(self.0, s)
    }
}
