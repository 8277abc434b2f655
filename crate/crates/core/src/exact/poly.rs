use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::Rational;
use crate::error::{Error, Result};

/// Dense univariate polynomial over the rationals in the indeterminate `nu`,
/// coefficients in ascending degree. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip().expect("nonzero leading coefficient")),
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dl = d.leading().ok_or(Error::DivisionByZero)?.recip()?;
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &dl;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&c * dc);
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        Polynomial::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs.clone())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    /// Descending powers, e.g. `1/2*nu^2 - 5/2*nu + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == Rational::one();
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        write!(f, "nu")?;
                    } else {
                        write!(f, "nu^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Parses the [`Display`](fmt::Display) form. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a polynomial: {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'^' | b'*' | b'/') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut acc = Polynomial::zero();
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            let (coef, power) = match body.find("nu") {
                None => (body.parse::<Rational>().map_err(|_| bad())?, 0usize),
                Some(pos) => {
                    let coef = match &body[..pos] {
                        "" => Rational::one(),
                        c => c
                            .strip_suffix('*')
                            .ok_or_else(bad)?
                            .parse::<Rational>()
                            .map_err(|_| bad())?,
                    };
                    let power = match &body[pos + 2..] {
                        "" => 1,
                        p => p
                            .strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<usize>()
                            .map_err(|_| bad())?,
                    };
                    (coef, power)
                }
            };
            let coef = if neg { -coef } else { coef };
            let mut mono = vec![Rational::zero(); power + 1];
            mono[power] = coef;
            acc = &acc + &Polynomial::new(mono);
        }
        Ok(acc)
    }
}
