//! Occupation scans over three- and four-level Dicke states.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::classify::{family_label, signature, FamilyLabel, RankSignature, SplitChoice};
use crate::error::{Error, Result};
use crate::generators::dicke_state;

/// Largest `n` the scan accepts for each level count.
pub fn max_scan_sites(levels: usize) -> Option<usize> {
    match levels {
        3 => Some(10),
        4 => Some(8),
        _ => None,
    }
}

/// One occupation tuple of the scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    /// `(l0, l1, l2[, l3])`: number of sites in each level.
    pub occupations: Vec<usize>,
    /// Population variance of the occupation numbers.
    pub variance: BigRational,
    pub signature: RankSignature,
    pub label: FamilyLabel,
}

impl ScanRow {
    pub fn variance_f64(&self) -> f64 {
        self.variance.to_f64().unwrap_or(f64::NAN)
    }
}

/// `sum_i (x_i - mean)^2 / k` over the `k` entries, exactly.
pub fn population_variance(xs: &[usize]) -> BigRational {
    let k = BigRational::from_integer(xs.len().into());
    let total: usize = xs.iter().sum();
    let mean = BigRational::from_integer(total.into()) / &k;
    let ss = xs
        .iter()
        .map(|&x| {
            let d = BigRational::from_integer(x.into()) - &mean;
            &d * &d
        })
        .fold(BigRational::from_integer(0.into()), |a, b| a + b);
    ss / k
}

/// Every valid excitation tuple `(l1, .., l_{levels-1})` with sum at most
/// `n - 1`, in lexicographic order, returned as full occupations `(l0, l1, ..)`.
pub fn occupation_tuples(levels: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, n: usize) {
        if slots == 0 {
            let used: usize = prefix.iter().sum();
            let mut occ = vec![n - used];
            occ.extend_from_slice(prefix);
            out.push(occ);
            return;
        }
        for v in 0..=left {
            prefix.push(v);
            rec(left - v, slots - 1, prefix, out, n);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 1 {
        rec(n - 1, levels - 1, &mut Vec::new(), &mut out, n);
    }
    out
}

/// Signature at `l = floor(n/2)` of every Dicke state in the scan.
pub fn dicke_scan(levels: usize, n: usize) -> Result<Vec<ScanRow>> {
    let max = max_scan_sites(levels)
        .ok_or_else(|| Error::InvalidParameters(format!("scan supports 3 or 4 levels, got {levels}")))?;
    if n > max {
        return Err(Error::ScaleGuard(format!(
            "{levels}-level scan limited to n <= {max} (got {n}); larger n needs matrices beyond desk scale"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidParameters(format!("scan needs n >= 2, got {n}")));
    }
    let l = SplitChoice::Fixed(n / 2);
    occupation_tuples(levels, n)
        .into_par_iter()
        .map(|occ| {
            let state = dicke_state(&occ)?;
            let signature = signature(&state, l)?;
            Ok(ScanRow {
                variance: population_variance(&occ),
                label: family_label(&signature),
                occupations: occ,
                signature,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_cover_constraint() {
        let t = occupation_tuples(3, 3);
        // l1 + l2 <= 2
        assert_eq!(t.len(), 6);
        assert_eq!(t[0], vec![3, 0, 0]);
        assert!(t.iter().all(|o| o[0] >= 1 && o.iter().sum::<usize>() == 3));
        assert_eq!(occupation_tuples(4, 8).len(), 120);
    }

    #[test]
    fn variance_values() {
        assert_eq!(population_variance(&[3, 3, 3]), BigRational::from_integer(0.into()));
        // mean 3, deviations (-2,-2,4) -> 24/3
        assert_eq!(population_variance(&[1, 1, 7]), BigRational::from_integer(8.into()));
    }

    #[test]
    fn guards() {
        assert!(matches!(dicke_scan(3, 11), Err(Error::ScaleGuard(_))));
        assert!(matches!(dicke_scan(4, 9), Err(Error::ScaleGuard(_))));
        assert!(dicke_scan(5, 4).is_err());
    }

    #[test]
    fn product_state_row_is_all_ones() {
        let rows = dicke_scan(3, 4).unwrap();
        let ground = rows.iter().find(|r| r.occupations == vec![4, 0, 0]).unwrap();
        assert!(ground.signature.is_all_ones());
    }
}
