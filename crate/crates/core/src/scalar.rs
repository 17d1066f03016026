//! Complex numbers with exact rational real and imaginary parts.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A complex rational `re + im·i`.
///
/// Both parts are kept in lowest terms with a positive denominator, so
/// structural equality is numeric equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    re: BigRational,
    im: BigRational,
}

impl ExactScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ExactScalar { re, im }
    }

    pub fn from_integer(re: i64) -> Self {
        Self::gaussian(re, 0)
    }

    /// The Gaussian integer `re + im·i`.
    pub fn gaussian(re: i64, im: i64) -> Self {
        ExactScalar {
            re: BigRational::from_integer(re.into()),
            im: BigRational::from_integer(im.into()),
        }
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        ExactScalar {
            re: BigRational::new(numer.into(), denom.into()),
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        Self::gaussian(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn conj(&self) -> Self {
        ExactScalar {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|z|^2`, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(ExactScalar {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    /// Least common multiple of the two denominators.
    pub fn denom_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    pub fn to_complex64(&self) -> Option<Complex64> {
        let re = self.re.to_f64()?;
        let im = self.im.to_f64()?;
        if re.is_finite() && im.is_finite() {
            Some(Complex64::new(re, im))
        } else {
            None
        }
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        Self::from_integer(1)
    }
}

impl From<i64> for ExactScalar {
    fn from(v: i64) -> Self {
        Self::from_integer(v)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(re: BigRational) -> Self {
        ExactScalar {
            re,
            im: BigRational::zero(),
        }
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        if self.is_real() && rhs.is_real() {
            return ExactScalar::from(&self.re * &rhs.re);
        }
        ExactScalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl<'a> Div<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    /// Panics on division by zero, like the integer types.
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        let inv = rhs.recip().expect("division by zero ExactScalar");
        self * &inv
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl std::iter::Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or `p` (optional leading sign, no whitespace inside).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = |why: &str| Error::Parse {
        line: None,
        message: format!("malformed rational {s:?}: {why}"),
    };
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
    let den: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad("bad denominator"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// `re+imi` with both parts always written, e.g. `1/2-3/4i`, `0+0i`.
impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}i",
            format_rational(&self.re),
            sign,
            format_rational(&self.im.abs())
        )
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    /// Inverse of `Display`. Also accepts a bare rational with no imaginary part.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(body) = s.strip_suffix('i') else {
            return Ok(ExactScalar::from(parse_rational(s)?));
        };
        // the separating sign is the last '+'/'-' that is not at position 0
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(|| Error::Parse {
                line: None,
                message: format!("malformed complex {s:?}"),
            })?;
        let re = parse_rational(&body[..split])?;
        let im = parse_rational(&body[split..])?;
        Ok(ExactScalar { re, im })
    }
}
