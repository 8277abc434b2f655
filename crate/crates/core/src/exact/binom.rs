use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// Binomial coefficient `C(a, b)` with the vanishing convention: zero when
/// `b < 0` or `b > a`. Negative `a` is rejected.
pub fn binom(a: i64, b: i64) -> Result<BigInt> {
    if a < 0 {
        return Err(Error::InvalidParams(format!("binom with negative top {a}")));
    }
    Ok(binom_unchecked(a as u64, b))
}

pub(crate) fn binom_unchecked(a: u64, b: i64) -> BigInt {
    if b < 0 || b as u64 > a {
        return BigInt::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigInt::one();
    for j in 0..b {
        acc *= a - j;
        acc /= j + 1;
    }
    acc
}

/// `C(a, b)` as a machine integer, for indexing. Panics on overflow, which
/// cannot happen for the orders a dense or enumerative path can touch.
pub fn binom_u64(a: usize, b: usize) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for j in 0..b as u128 {
        acc = acc * (a as u128 - j) / (j + 1);
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// The degree-`b` polynomial `C(ν + shift, b) = Π_{j<b} (ν + shift − j) / b!`.
pub fn binom_poly(shift: i64, b: usize) -> Polynomial {
    let mut acc = Polynomial::one();
    let mut fact = BigInt::one();
    for j in 0..b {
        let root = Rational::from_int(shift - j as i64);
        acc = &acc * &Polynomial::new(vec![root, Rational::one()]);
        fact *= j + 1;
    }
    acc.scale(&Rational::from(BigInt::one()).div_int(&fact))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binom(7, 3).unwrap(), BigInt::from(35));
        assert_eq!(binom(5, 0).unwrap(), BigInt::from(1));
        assert_eq!(binom(3, 5).unwrap(), BigInt::from(0));
        assert_eq!(binom(3, -1).unwrap(), BigInt::from(0));
        assert!(binom(-1, 0).is_err());
        assert_eq!(binom_u64(14, 7), 3432);
        assert_eq!(binom_u64(3, 4), 0);
    }

    #[test]
    fn pascal_rule() {
        for a in 1..=30i64 {
            for b in 0..=a {
                assert_eq!(
                    binom(a, b).unwrap(),
                    binom(a - 1, b - 1).unwrap() + binom(a - 1, b).unwrap()
                );
            }
        }
    }

    #[test]
    fn binom_poly_examples() {
        assert_eq!(binom_poly(0, 1), Polynomial::x());
        assert_eq!(binom_poly(0, 0), Polynomial::one());
        // (ν² − 5ν + 6)/2
        let expected = Polynomial::new(vec![
            Rational::from_int(3),
            Rational::new(-5, 2),
            Rational::new(1, 2),
        ]);
        assert_eq!(binom_poly(-2, 2), expected);
        assert_eq!(binom_poly(-2, 2).eval(&Rational::from_int(7)), Rational::from_int(10));
    }

    #[test]
    fn binom_poly_matches_integer_binomials() {
        for shift in -10i64..=10 {
            for b in 0..=8usize {
                let p = binom_poly(shift, b);
                for n in 0i64..30 {
                    if n + shift < 0 {
                        continue;
                    }
                    let v = p.eval(&Rational::from_int(n));
                    assert_eq!(v, Rational::from(binom(n + shift, b as i64).unwrap()));
                }
            }
        }
    }
}
