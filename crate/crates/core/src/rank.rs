//! Rank and determinant over the complex rationals, plus a floating-point
//! cross-check.
//!
//! The exact path never compares against a tolerance. Each row is first
//! scaled to Gaussian integers, then reduced by fraction-free (Bareiss)
//! elimination: every update `a_ij <- (p * a_ij - a_ic * a_rj) / p_prev` divides
//! exactly, and every intermediate entry is a minor of the input, so sizes
//! grow only linearly with the number of pivots.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::{integral_row, remove_content, GaussInt};
use crate::matrix::{ExactMatrix, IntMatrix};
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMethod {
    Exact,
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankResult {
    pub rank: usize,
    pub method: RankMethod,
    /// `(original row, column)` of every pivot, in elimination order. Empty for the numeric path.
    pub pivots: Vec<(usize, usize)>,
}

/// Threshold policy for [`rank_numeric`]: singular values at or below
/// `sigma_max * max(rows, cols) * f64::EPSILON * safety_factor` count as zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericTolerance {
    pub safety_factor: f64,
}

impl NumericTolerance {
    pub const DEFAULT_SAFETY_FACTOR: f64 = 100.0;
}

impl Default for NumericTolerance {
    fn default() -> Self {
        NumericTolerance {
            safety_factor: Self::DEFAULT_SAFETY_FACTOR,
        }
    }
}

/// Exact rank by fraction-free elimination. Pivot: first nonzero entry in the
/// current column among the remaining rows.
pub fn rank_exact(m: &ExactMatrix) -> RankResult {
    let (nrows, ncols) = m.shape();
    let mut rows: Vec<(usize, Vec<GaussInt>)> = (0..nrows)
        .map(|r| {
            let mut row = integral_row(m.row(r));
            remove_content(&mut row);
            (r, row)
        })
        .collect();

    let mut pivots = Vec::new();
    let mut prev = GaussInt {
        re: One::one(),
        im: Zero::zero(),
    };
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(found) = (rank..nrows).find(|&i| !rows[i].1[col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        pivots.push((rows[rank].0, col));

        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank].1;
        let p = &pivot_row[col];
        for (_, row) in tail.iter_mut() {
            let e = std::mem::take(&mut row[col]);
            for c in col + 1..ncols {
                let a = &row[c];
                let b = &pivot_row[c];
                let v = match (a.is_zero(), b.is_zero() || e.is_zero()) {
                    (true, true) => continue,
                    (false, true) => a.mul(p),
                    (true, false) => b.mul(&e).neg(),
                    (false, false) => a.mul(p).sub(&b.mul(&e)),
                };
                row[c] = v.div_exact(&prev);
            }
        }
        prev = p.clone();
        rank += 1;
    }

    RankResult {
        rank,
        method: RankMethod::Exact,
        pivots,
    }
}

/// Exact determinant by Bareiss elimination; `None` for a non-square matrix.
pub fn determinant(m: &ExactMatrix) -> Option<ExactScalar> {
    if m.rows() != m.cols() {
        return None;
    }
    let n = m.rows();
    let int = IntMatrix::from_exact(m);
    let mut a: Vec<Vec<GaussInt>> = int.data.chunks(n).map(<[GaussInt]>::to_vec).collect();
    let mut prev = GaussInt {
        re: One::one(),
        im: Zero::zero(),
    };
    let mut negate = false;
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Some(ExactScalar::zero());
            };
            a.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let mut det = a[n - 1][n - 1].clone();
    if negate {
        det = det.neg();
    }
    // det(A) = det(denom * A) / denom^n
    let scale = num_traits::pow(int.denom, n);
    Some(det.to_exact(&scale))
}

/// Rank from the singular values of the floating-point image of `m`.
pub fn rank_numeric(m: &ExactMatrix, tol: NumericTolerance) -> Result<RankResult> {
    let mut data = Vec::with_capacity(m.rows() * m.cols());
    for x in m.entries() {
        data.push(x.to_complex64().ok_or_else(|| Error::Overflow(x.to_string()))?);
    }
    Ok(rank_of_floats(DMatrix::from_row_slice(m.rows(), m.cols(), &data), tol))
}

/// Numeric rank for input that is already floating point.
pub fn rank_of_floats(m: DMatrix<Complex64>, tol: NumericTolerance) -> RankResult {
    let dim = m.nrows().max(m.ncols());
    let sv = m.singular_values();
    let sigma_max = sv.iter().copied().fold(0.0_f64, f64::max);
    let threshold = sigma_max * dim as f64 * f64::EPSILON * tol.safety_factor;
    let rank = sv.iter().filter(|&&s| s > threshold).count();
    RankResult {
        rank,
        method: RankMethod::Numeric,
        pivots: Vec::new(),
    }
}
