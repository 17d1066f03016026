//! Local operators `F_1 ⊗ ... ⊗ F_n` acting on states, and the checks that
//! coefficient-matrix ranks are preserved by invertible ones and never grow
//! under arbitrary ones.

use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matricize::{permutation_set, QuditPermutation, Split};
use crate::gauss::{common_denominator, GaussInt};
use crate::matrix::{ExactMatrix, IntMatrix};
use crate::rank::{determinant, rank_exact};
use crate::sampling::{random_dims, random_ilo_with, random_local_possibly_singular_with, random_state, rng_from_seed};
use crate::scalar::ExactScalar;
use crate::state::{decode, encode, Dims, QuditState};

/// One factor `F_(site)`, a `d x d` matrix for the site's dimension `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalOperator {
    pub site: usize,
    pub matrix: ExactMatrix,
}

/// A full product operator, one factor per site.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalOperatorSet {
    factors: Vec<ExactMatrix>,
    invertible: bool,
}

impl LocalOperatorSet {
    /// `factors[k]` acts on site `k + 1` and must be `dims[k] x dims[k]`.
    pub fn new(dims: &Dims, factors: Vec<ExactMatrix>) -> Result<Self> {
        if factors.len() != dims.n() {
            return Err(Error::DimensionMismatch(format!(
                "{} local factors for {} sites",
                factors.len(),
                dims.n()
            )));
        }
        for (k, (f, &d)) in factors.iter().zip(dims.sizes()).enumerate() {
            if f.shape() != (d, d) {
                return Err(Error::DimensionMismatch(format!(
                    "factor for site {} is {}x{}, site dimension is {d}",
                    k + 1,
                    f.rows(),
                    f.cols()
                )));
            }
        }
        let invertible = factors
            .iter()
            .all(|f| determinant(f).is_some_and(|det| !det.is_zero()));
        Ok(LocalOperatorSet { factors, invertible })
    }

    pub fn from_operators(dims: &Dims, mut ops: Vec<LocalOperator>) -> Result<Self> {
        ops.sort_by_key(|op| op.site);
        let sites: Vec<usize> = ops.iter().map(|op| op.site).collect();
        if sites != (1..=dims.n()).collect::<Vec<_>>() {
            return Err(Error::DimensionMismatch(format!(
                "operators cover sites {sites:?}, need exactly 1..={}",
                dims.n()
            )));
        }
        Self::new(dims, ops.into_iter().map(|op| op.matrix).collect())
    }

    pub fn identity(dims: &Dims) -> Self {
        LocalOperatorSet {
            factors: dims.sizes().iter().map(|&d| ExactMatrix::identity(d)).collect(),
            invertible: true,
        }
    }

    /// True iff every factor has a nonzero (exact) determinant.
    pub fn is_invertible(&self) -> bool {
        self.invertible
    }

    pub fn factor(&self, site: usize) -> &ExactMatrix {
        &self.factors[site - 1]
    }

    pub fn factors(&self) -> &[ExactMatrix] {
        &self.factors
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.factors.iter().map(ExactMatrix::rows).collect()
    }

    /// Factor-wise inverse; `None` unless every factor is invertible.
    pub fn inverse(&self) -> Option<LocalOperatorSet> {
        let factors = self.factors.iter().map(ExactMatrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(LocalOperatorSet {
            factors,
            invertible: true,
        })
    }
}

/// Dense image of the state under the operator, one site at a time. May be all zero.
///
/// Runs over Gaussian integers: the state and each factor are scaled by their
/// common denominators, which are divided back out at the end.
pub(crate) fn transform_dense(state: &QuditState, ops: &LocalOperatorSet) -> Result<Vec<ExactScalar>> {
    let sizes = state.dims().sizes();
    if ops.sizes() != sizes {
        return Err(Error::DimensionMismatch(format!(
            "operator dims {:?} do not match state dims {:?}",
            ops.sizes(),
            sizes
        )));
    }
    let dense = state.to_dense();
    let mut denom = common_denominator(&dense);
    let mut current: Vec<GaussInt> = dense.iter().map(|x| GaussInt::from_scaled(x, &denom)).collect();
    for (k, f) in ops.factors.iter().enumerate() {
        let f = IntMatrix::from_exact(f);
        denom *= &f.denom;
        let d = sizes[k];
        // stride of site k+1 in the flat index
        let inner: usize = sizes[k + 1..].iter().product();
        let outer: usize = sizes[..k].iter().product();
        let mut next = vec![GaussInt::zero(); current.len()];
        for o in 0..outer {
            for i in 0..inner {
                let base = o * d * inner + i;
                for s in 0..d {
                    let a = &current[base + s * inner];
                    if a.is_zero() {
                        continue;
                    }
                    for t in 0..d {
                        let coeff = &f.data[t * d + s];
                        if !coeff.is_zero() {
                            next[base + t * inner].add_assign(&coeff.mul(a));
                        }
                    }
                }
            }
        }
        current = next;
    }
    Ok(current.iter().map(|g| g.to_exact(&denom)).collect())
}

/// `(F_1 ⊗ ... ⊗ F_n)|state⟩`, exactly. An all-zero image is reported as
/// [`Error::ZeroState`], which can only happen for singular factors.
pub fn apply_local(state: &QuditState, ops: &LocalOperatorSet) -> Result<QuditState> {
    let dense = transform_dense(state, ops)?;
    QuditState::from_dense(state.dims().clone(), dense)
}

/// Matricizes a dense amplitude vector after permuting its sites.
fn matricize_dense(dims: &Dims, dense: &[ExactScalar], sigma: &QuditPermutation, l: usize) -> Result<ExactMatrix> {
    let n = dims.n();
    let order = sigma.to_site_permutation(n)?.inverse();
    let new_sizes: Vec<usize> = order.images().iter().map(|&s| dims.site(s)).collect();
    let rows: usize = new_sizes[..l].iter().product();
    let cols: usize = new_sizes[l..].iter().product();
    let mut m = ExactMatrix::zeros(rows, cols);
    for (i, a) in dense.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let digits = decode(i, dims.sizes());
        let j = encode(order.images().iter().map(|&s| digits[s - 1]), &new_sizes);
        m.set(j / cols, j % cols, a.clone());
    }
    Ok(m)
}

/// Both sides of the transformation law for one `(l, σ)`:
/// `M^σ(F|φ⟩)` and `(⊗ row factors) M^σ(|φ⟩) (⊗ column factors)^T`, where every
/// factor travels with its site under `σ`.
pub fn theorem1_sides(
    state: &QuditState,
    ops: &LocalOperatorSet,
    l: Split,
    sigma: &QuditPermutation,
) -> Result<(ExactMatrix, ExactMatrix)> {
    let n = state.n();
    let split = Split::new(l.get(), n)?;
    let sigma = QuditPermutation::new(sigma.transpositions().to_vec(), n, split)?;
    let image = transform_dense(state, ops)?;
    let lhs = matricize_dense(state.dims(), &image, &sigma, split.get())?;

    let m = matricize_dense(state.dims(), &state.to_dense(), &sigma, split.get())?;
    let order = sigma.to_site_permutation(n)?.inverse();
    let (row_sites, col_sites) = order.images().split_at(split.get());
    let kron = |sites: &[usize]| {
        sites
            .iter()
            .map(|&s| IntMatrix::from_exact(ops.factor(s)))
            .reduce(|acc, f| acc.kron(&f))
            .expect("both sides of a split are nonempty")
    };
    let rhs = kron(row_sites)
        .mul(&IntMatrix::from_exact(&m))
        .mul(&kron(col_sites).transpose())
        .to_exact();
    Ok((lhs, rhs))
}

/// Exact check of the coefficient-matrix transformation law. Holds for any
/// factors, singular ones included.
pub fn verify_theorem1(state: &QuditState, ops: &LocalOperatorSet, l: Split, sigma: &QuditPermutation) -> Result<bool> {
    let (lhs, rhs) = theorem1_sides(state, ops, l, sigma)?;
    Ok(lhs == rhs)
}

/// Rank of one coefficient matrix before and after a local operator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankPair {
    pub l: usize,
    pub sigma: String,
    pub before: usize,
    pub after: usize,
}

/// Ranks before/after at every split and canonical permutation.
/// Errors with [`Error::ZeroState`] when the operator annihilates the state.
pub fn rank_pairs(state: &QuditState, ops: &LocalOperatorSet) -> Result<Vec<RankPair>> {
    let image = apply_local(state, ops)?;
    let n = state.n();
    let mut out = Vec::new();
    for l in 1..n {
        let split = Split::new(l, n)?;
        for sigma in &permutation_set(n, split) {
            let before = rank_exact(&crate::matricize::coefficient_matrix(state, split, sigma)?.matrix).rank;
            let after = rank_exact(&crate::matricize::coefficient_matrix(&image, split, sigma)?.matrix).rank;
            out.push(RankPair {
                l,
                sigma: sigma.to_string(),
                before,
                after,
            });
        }
    }
    Ok(out)
}

/// True iff no coefficient-matrix rank grows under `ops`. A zero image is
/// returned as `Err(Error::ZeroState)`, which callers treat as a skip.
pub fn check_monotone_nonincrease(state: &QuditState, ops: &LocalOperatorSet) -> Result<bool> {
    Ok(rank_pairs(state, ops)?.iter().all(|p| p.after <= p.before))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrialOutcome {
    Pass,
    Fail,
    Skip,
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialReport {
    pub seed: u64,
    pub dims: Vec<usize>,
    pub invertible: bool,
    pub result: TrialOutcome,
    /// Number of `(l, σ)` pairs where the exact matrix identity held (theorem-1 trials only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identities_held: Option<usize>,
    pub ranks: Vec<RankPair>,
}

/// Sampling limits for randomized trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialConfig {
    pub max_n: usize,
    pub max_d: usize,
    pub entry_bound: i64,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig {
            max_n: 5,
            max_d: 4,
            entry_bound: crate::sampling::DEFAULT_ENTRY_BOUND,
        }
    }
}

/// Seed of trial `index` in a run seeded with `base`.
pub fn trial_seed(base: u64, index: u64) -> u64 {
    base.wrapping_add(index)
}

fn trial_dims<R: Rng>(rng: &mut R, cfg: &TrialConfig, fixed: Option<&Dims>) -> Result<Dims> {
    match fixed {
        Some(d) => Ok(d.clone()),
        None => random_dims(rng, cfg.max_n, cfg.max_d),
    }
}

/// Random state, random invertible factors: every identity must hold exactly
/// and every rank must be unchanged.
pub fn theorem1_trial(seed: u64, cfg: &TrialConfig, dims: Option<&Dims>) -> Result<TrialReport> {
    let mut rng = rng_from_seed(seed);
    let dims = trial_dims(&mut rng, cfg, dims)?;
    let state = random_state(&mut rng, &dims, cfg.entry_bound);
    let factors = dims
        .sizes()
        .iter()
        .map(|&d| random_ilo_with(&mut rng, d, cfg.entry_bound))
        .collect::<Result<Vec<_>>>()?;
    let ops = LocalOperatorSet::new(&dims, factors)?;

    let n = dims.n();
    let mut held = 0;
    let mut total = 0;
    for l in 1..n {
        let split = Split::new(l, n)?;
        for sigma in &permutation_set(n, split) {
            total += 1;
            if verify_theorem1(&state, &ops, split, sigma)? {
                held += 1;
            }
        }
    }
    let ranks = rank_pairs(&state, &ops)?;
    let ok = held == total && ranks.iter().all(|p| p.before == p.after);
    Ok(TrialReport {
        seed,
        dims: dims.sizes().to_vec(),
        invertible: true,
        result: if ok { TrialOutcome::Pass } else { TrialOutcome::Fail },
        identities_held: Some(held),
        ranks,
    })
}

/// Random state, factors that are singular at some sites (a third of the
/// trials use all-invertible factors instead). Passes when no rank grows, and
/// for invertible factors when every rank is unchanged. Zero images are skips.
pub fn monotone_trial(seed: u64, cfg: &TrialConfig, dims: Option<&Dims>) -> Result<TrialReport> {
    let mut rng = rng_from_seed(seed);
    let dims = trial_dims(&mut rng, cfg, dims)?;
    let state = random_state(&mut rng, &dims, cfg.entry_bound);
    let all_invertible = rng.gen_bool(1.0 / 3.0);
    let n = dims.n();
    let forced = rng.gen_range(0..n);
    let factors = dims
        .sizes()
        .iter()
        .enumerate()
        .map(|(k, &d)| {
            if all_invertible {
                random_ilo_with(&mut rng, d, cfg.entry_bound)
            } else {
                let singular = k == forced || rng.gen_bool(0.5);
                random_local_possibly_singular_with(&mut rng, d, cfg.entry_bound, singular)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let ops = LocalOperatorSet::new(&dims, factors)?;

    let (result, ranks) = match rank_pairs(&state, &ops) {
        Err(Error::ZeroState) => (TrialOutcome::Skip, Vec::new()),
        Err(e) => return Err(e),
        Ok(ranks) => {
            let ok = if ops.is_invertible() {
                ranks.iter().all(|p| p.after == p.before)
            } else {
                ranks.iter().all(|p| p.after <= p.before)
            };
            (if ok { TrialOutcome::Pass } else { TrialOutcome::Fail }, ranks)
        }
    };
    Ok(TrialReport {
        seed,
        dims: dims.sizes().to_vec(),
        invertible: ops.is_invertible(),
        result,
        identities_held: None,
        ranks,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialKind {
    Theorem1,
    Monotone,
}

/// Runs `trials` independent trials in parallel; reports come back in trial order.
pub fn run_trials(
    kind: TrialKind,
    base_seed: u64,
    trials: u64,
    cfg: &TrialConfig,
    dims: Option<&Dims>,
) -> Result<Vec<TrialReport>> {
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(base_seed, i);
            match kind {
                TrialKind::Theorem1 => theorem1_trial(seed, cfg, dims),
                TrialKind::Monotone => monotone_trial(seed, cfg, dims),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct TrialSummary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    /// Passing trials whose factors were all invertible.
    pub invertible_pass: usize,
}

pub fn summarize(reports: &[TrialReport]) -> TrialSummary {
    let mut s = TrialSummary::default();
    for r in reports {
        match r.result {
            TrialOutcome::Pass => {
                s.pass += 1;
                if r.invertible {
                    s.invertible_pass += 1;
                }
            }
            TrialOutcome::Fail => s.fail += 1,
            TrialOutcome::Skip => s.skip += 1,
        }
    }
    s
}
