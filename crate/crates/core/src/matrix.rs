//! Dense matrices over [`ExactScalar`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gauss::{common_denominator, GaussInt};
use crate::scalar::ExactScalar;

/// Row-major dense matrix of exact complex rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<ExactScalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch("matrix must be nonempty".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix must be nonempty");
        ExactMatrix {
            rows,
            cols,
            data: vec![ExactScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| {
            if r == c {
                ExactScalar::one()
            } else {
                ExactScalar::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactScalar) -> Self {
        assert!(rows > 0 && cols > 0, "matrix must be nonempty");
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    /// Real integer matrix from a row-major slice.
    pub fn from_integers(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&v| ExactScalar::from_integer(v)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &ExactScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: ExactScalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[ExactScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[ExactScalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn is_hermitian(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (r..self.cols).all(|c| *self.get(r, c) == self.get(c, r).conj()))
    }

    /// Matrix product, computed on Gaussian integers after clearing denominators.
    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let a = IntMatrix::from_exact(self);
        let b = IntMatrix::from_exact(rhs);
        Ok(a.mul(&b).to_exact())
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &ExactMatrix) -> ExactMatrix {
        IntMatrix::from_exact(self).kron(&IntMatrix::from_exact(rhs)).to_exact()
    }

    /// Kronecker product of a nonempty list of factors, left to right.
    pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a ExactMatrix>) -> Option<ExactMatrix> {
        let mut it = factors.into_iter();
        let first = IntMatrix::from_exact(it.next()?);
        Some(it.fold(first, |acc, m| acc.kron(&IntMatrix::from_exact(m))).to_exact())
    }

    pub fn scale_row(&mut self, r: usize, k: &ExactScalar) {
        for c in 0..self.cols {
            let v = self.get(r, c) * k;
            self.set(r, c, v);
        }
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` when singular or non-square.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = ExactMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a.get(col, col).recip()?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for c in 0..n {
                    let v = a.get(r, c) - &(&f * a.get(col, c));
                    a.set(r, c, v);
                    let w = inv.get(r, c) - &(&f * inv.get(col, c));
                    inv.set(r, c, w);
                }
            }
        }
        Some(inv)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(","))?;
        }
        Ok(())
    }
}

/// A matrix written as `entries / denom` with Gaussian-integer entries.
#[derive(Debug, Clone)]
pub(crate) struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<GaussInt>,
    pub denom: BigInt,
}

impl IntMatrix {
    pub fn from_exact(m: &ExactMatrix) -> Self {
        let denom = common_denominator(m.entries());
        IntMatrix {
            rows: m.rows,
            cols: m.cols,
            data: m.entries().iter().map(|x| GaussInt::from_scaled(x, &denom)).collect(),
            denom,
        }
    }

    pub fn to_exact(&self) -> ExactMatrix {
        let data = if self.denom.is_one() {
            self.data
                .iter()
                .map(|g| ExactScalar::new(g.re.clone().into(), g.im.clone().into()))
                .collect()
        } else {
            self.data.iter().map(|g| g.to_exact(&self.denom)).collect()
        };
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        let data = self.mul_small(rhs).unwrap_or_else(|| self.mul_big(rhs));
        IntMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
            denom: &self.denom * &rhs.denom,
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.data[r * self.cols + c].clone());
            }
        }
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
            denom: self.denom.clone(),
        }
    }

    /// Machine-integer product; `None` if an entry or a partial sum leaves `i128`.
    fn mul_small(&self, rhs: &IntMatrix) -> Option<Vec<GaussInt>> {
        let a = self.data.iter().map(GaussInt::to_small).collect::<Option<Vec<_>>>()?;
        let b = rhs.data.iter().map(GaussInt::to_small).collect::<Option<Vec<_>>>()?;
        let mut out = vec![(0i128, 0i128); self.rows * rhs.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let (ar, ai) = a[r * self.cols + k];
                if ar == 0 && ai == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let (br, bi) = b[k * rhs.cols + c];
                    let o = &mut out[r * rhs.cols + c];
                    o.0 = o.0.checked_add((ar * br).checked_sub(ai * bi)?)?;
                    o.1 = o.1.checked_add((ar * bi).checked_add(ai * br)?)?;
                }
            }
        }
        Some(out.into_iter().map(GaussInt::from_small).collect())
    }

    fn mul_big(&self, rhs: &IntMatrix) -> Vec<GaussInt> {
        let mut out = vec![GaussInt::zero(); self.rows * rhs.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[r * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + c];
                    if !b.is_zero() {
                        out[r * rhs.cols + c].add_assign(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn kron(&self, rhs: &IntMatrix) -> IntMatrix {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut data = vec![GaussInt::zero(); rows * cols];
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = &self.data[r1 * self.cols + c1];
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..rhs.rows {
                    for c2 in 0..rhs.cols {
                        let b = &rhs.data[r2 * rhs.cols + c2];
                        if !b.is_zero() {
                            data[(r1 * rhs.rows + r2) * cols + c1 * rhs.cols + c2] = a.mul(b);
                        }
                    }
                }
            }
        }
        IntMatrix {
            rows,
            cols,
            data,
            denom: &self.denom * &rhs.denom,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, v: &[i64]) -> ExactMatrix {
        ExactMatrix::from_integers(rows, cols, v).unwrap()
    }

    #[test]
    fn product_and_kron() {
        let a = m(2, 2, &[1, 2, 3, 4]);
        let b = m(2, 1, &[5, 6]);
        assert_eq!(a.mul(&b).unwrap(), m(2, 1, &[17, 39]));
        assert!(b.mul(&b).is_err());
        let k = m(1, 2, &[1, -1]).kron(&m(2, 1, &[2, 3]));
        assert_eq!(k, m(2, 2, &[2, -2, 3, -3]));
    }

    #[test]
    fn rational_product_keeps_denominators() {
        let half = ExactMatrix::new(1, 1, vec![ExactScalar::from_ratio(1, 2)]).unwrap();
        let third = ExactMatrix::new(1, 1, vec![ExactScalar::from_ratio(2, 3)]).unwrap();
        assert_eq!(half.mul(&third).unwrap().get(0, 0), &ExactScalar::from_ratio(1, 3));
        assert_eq!(half.kron(&third).get(0, 0), &ExactScalar::from_ratio(1, 3));
    }

    #[test]
    fn inverse_round_trip() {
        let a = ExactMatrix::new(
            2,
            2,
            vec![
                ExactScalar::gaussian(1, 1),
                ExactScalar::gaussian(2, 0),
                ExactScalar::gaussian(0, -1),
                ExactScalar::gaussian(3, 2),
            ],
        )
        .unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), ExactMatrix::identity(2));
        assert!(m(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn adjoint_is_hermitian_product() {
        let a = ExactMatrix::new(1, 2, vec![ExactScalar::gaussian(1, 2), ExactScalar::gaussian(0, 1)]).unwrap();
        let p = a.adjoint().mul(&a).unwrap();
        assert!(p.is_hermitian());
        assert!(!a.is_hermitian());
    }
}
