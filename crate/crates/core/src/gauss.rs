//! Gaussian-integer kernel used by the exact elimination and product routines.
//!
//! Rational matrices are brought here by clearing denominators, either per row
//! (rank, determinant) or per matrix (products), so the hot loops never touch
//! a gcd-normalized rational.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub(crate) struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn zero() -> Self {
        GaussInt::default()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn mul(&self, o: &GaussInt) -> GaussInt {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussInt {
                re: &self.re * &o.re,
                im: BigInt::zero(),
            };
        }
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn add_assign(&mut self, o: &GaussInt) {
        self.re += &o.re;
        self.im += &o.im;
    }

    /// Exact quotient; the caller guarantees divisibility in `Z[i]`.
    pub fn div_exact(&self, o: &GaussInt) -> GaussInt {
        let n = &o.re * &o.re + &o.im * &o.im;
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        debug_assert!((&re % &n).is_zero() && (&im % &n).is_zero());
        GaussInt { re: re / &n, im: im / &n }
    }

    pub fn div_int(&self, k: &BigInt) -> GaussInt {
        GaussInt {
            re: &self.re / k,
            im: &self.im / k,
        }
    }

    pub fn neg(&self) -> GaussInt {
        GaussInt {
            re: -&self.re,
            im: -&self.im,
        }
    }

    /// `self * scale` for an exact scalar whose product is known to be integral.
    pub fn from_scaled(x: &ExactScalar, scale: &BigInt) -> GaussInt {
        if scale.is_one() {
            return GaussInt {
                re: x.re().numer().clone(),
                im: x.im().numer().clone(),
            };
        }
        let re = x.re() * BigRational::from_integer(scale.clone());
        let im = x.im() * BigRational::from_integer(scale.clone());
        debug_assert!(re.is_integer() && im.is_integer());
        GaussInt {
            re: re.to_integer(),
            im: im.to_integer(),
        }
    }

    /// Both parts as machine integers, when each fits in an `i64`. Products
    /// of two such values cannot overflow an `i128`.
    pub fn to_small(&self) -> Option<(i128, i128)> {
        Some((self.re.to_i64()? as i128, self.im.to_i64()? as i128))
    }

    pub fn from_small((re, im): (i128, i128)) -> GaussInt {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn to_exact(&self, denom: &BigInt) -> ExactScalar {
        ExactScalar::new(
            BigRational::new(self.re.clone(), denom.clone()),
            BigRational::new(self.im.clone(), denom.clone()),
        )
    }
}

/// Lcm of every denominator in the slice (1 for an all-integer slice).
pub(crate) fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a ExactScalar>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(&x.denom_lcm()))
}

/// Clears the denominators of a row: the result is a nonzero integer multiple of it.
pub(crate) fn integral_row(row: &[ExactScalar]) -> Vec<GaussInt> {
    let l = common_denominator(row);
    row.iter().map(|x| GaussInt::from_scaled(x, &l)).collect()
}

/// Divides a row by the gcd of all its integer parts.
pub(crate) fn remove_content(row: &mut [GaussInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.re.is_zero() {
            g = g.gcd(&x.re);
        }
        if !x.im.is_zero() {
            g = g.gcd(&x.im);
        }
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    let g = g.abs();
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = x.div_int(&g);
        }
    }
}
