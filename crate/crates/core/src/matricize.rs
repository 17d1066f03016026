//! Coefficient matrices: a state's amplitude tensor reshaped with a chosen
//! block of (possibly permuted) sites as the row index.
//!
//! The canonical permutations swap row-side sites with column-side sites
//! pairwise, `(r_1 c_1)(r_2 c_2)...(r_k c_k)` with both sequences ascending;
//! permutations that only reorder sites inside one block are left out since
//! they permute rows or columns of the matrix and leave the rank alone.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::state::{permute_qudits, Dims, QuditState, SitePermutation};

/// Number of row-side sites, `1 <= l <= n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Split(usize);

impl Split {
    pub fn new(l: usize, n: usize) -> Result<Self> {
        if l == 0 || l >= n {
            return Err(Error::InvalidSplit { l, n });
        }
        Ok(Split(l))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Product of disjoint row/column transpositions; empty means the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QuditPermutation {
    transpositions: Vec<(usize, usize)>,
}

impl QuditPermutation {
    pub fn identity() -> Self {
        QuditPermutation::default()
    }

    /// Checks the structural form for split `l` on `n` sites: rows strictly
    /// ascending in `1..=l`, columns strictly ascending in `l+1..=n`.
    pub fn new(transpositions: Vec<(usize, usize)>, n: usize, l: Split) -> Result<Self> {
        let l = l.get();
        let bad = |why: String| Error::InvalidPermutation(format!("{}: {why}", Self::render(&transpositions)));
        for w in transpositions.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(bad("row and column sites must both be strictly ascending".into()));
            }
        }
        for &(r, c) in &transpositions {
            if r == 0 || r > l {
                return Err(bad(format!("row site {r} not in 1..={l}")));
            }
            if c <= l || c > n {
                return Err(bad(format!("column site {c} not in {}..={n}", l + 1)));
            }
        }
        Ok(QuditPermutation { transpositions })
    }

    pub fn transpositions(&self) -> &[(usize, usize)] {
        &self.transpositions
    }

    pub fn is_identity(&self) -> bool {
        self.transpositions.is_empty()
    }

    pub fn to_site_permutation(&self, n: usize) -> Result<SitePermutation> {
        SitePermutation::from_transpositions(n, &self.transpositions)
    }

    fn render(t: &[(usize, usize)]) -> String {
        if t.is_empty() {
            "I".to_string()
        } else {
            t.iter().map(|(r, c)| format!("({r},{c})")).collect()
        }
    }
}

impl fmt::Display for QuditPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Self::render(&self.transpositions))
    }
}

impl FromStr for QuditPermutation {
    type Err = Error;

    /// Parses `I` or a cycle list like `(1,3)(2,4)`. Structure is checked by [`QuditPermutation::new`].
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "I" || s.is_empty() {
            return Ok(QuditPermutation::identity());
        }
        let bad = || Error::InvalidPermutation(format!("cannot parse {s:?}, expected I or (r,c)(r,c)..."));
        let inner = s.strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
        let transpositions = inner
            .split(")(")
            .map(|pair| {
                let (a, b) = pair.split_once(',').ok_or_else(bad)?;
                Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QuditPermutation { transpositions })
    }
}

/// The canonical permutations for one split, identity first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermutationSet {
    n: usize,
    l: Split,
    perms: Vec<QuditPermutation>,
}

impl PermutationSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn split(&self) -> Split {
        self.l
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, QuditPermutation> {
        self.perms.iter()
    }

    pub fn as_slice(&self) -> &[QuditPermutation] {
        &self.perms
    }
}

impl fmt::Display for PermutationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.perms.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl<'a> IntoIterator for &'a PermutationSet {
    type Item = &'a QuditPermutation;
    type IntoIter = std::slice::Iter<'a, QuditPermutation>;
    fn into_iter(self) -> Self::IntoIter {
        self.perms.iter()
    }
}

/// Canonical permutation set for `n` sites split after `l`.
///
/// For `l = 1` this is `(1,k+1)` for `k = 0..n-1`. Otherwise rows come from
/// `1..l + (n mod 2) - 1`, columns from `l+1..=n`, and the number of
/// transpositions runs from 0 up to `l - (n mod 2)`, capped by both pool sizes.
/// For odd `n` that cap excludes the full block exchange even when the pools
/// would allow it.
pub fn permutation_set(n: usize, l: Split) -> PermutationSet {
    let lv = l.get();
    let perms = if lv == 1 {
        std::iter::once(QuditPermutation::identity())
            .chain((2..=n).map(|c| QuditPermutation {
                transpositions: vec![(1, c)],
            }))
            .collect()
    } else {
        let parity = n % 2;
        let row_pool: Vec<usize> = (1..lv + parity).collect();
        let col_pool: Vec<usize> = (lv + 1..=n).collect();
        let kmax = (lv - parity).min(row_pool.len()).min(col_pool.len());
        let mut perms = Vec::new();
        for k in 0..=kmax {
            for rows in row_pool.iter().copied().combinations(k) {
                for cols in col_pool.iter().copied().combinations(k) {
                    perms.push(QuditPermutation {
                        transpositions: rows.iter().copied().zip(cols).collect(),
                    });
                }
            }
        }
        perms
    };
    PermutationSet { n, l, perms }
}

/// A matricized state together with where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientMatrix {
    pub matrix: ExactMatrix,
    pub split: Split,
    pub sigma: QuditPermutation,
    pub row_dims: Vec<usize>,
    pub col_dims: Vec<usize>,
}

impl CoefficientMatrix {
    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }
}

/// Row index: first `l` digits of the permuted state; column index: the rest.
pub fn coefficient_matrix(state: &QuditState, l: Split, sigma: &QuditPermutation) -> Result<CoefficientMatrix> {
    let n = state.n();
    let split = Split::new(l.get(), n)?;
    let sigma = QuditPermutation::new(sigma.transpositions.clone(), n, split)?;
    let permuted = permute_qudits(state, &sigma.to_site_permutation(n)?)?;
    let matrix = matricize(&permuted, split.get());
    let sizes = permuted.dims().sizes();
    Ok(CoefficientMatrix {
        matrix,
        split,
        sigma,
        row_dims: sizes[..split.get()].to_vec(),
        col_dims: sizes[split.get()..].to_vec(),
    })
}

/// Reshape with the first `l` sites as rows; the flat index is `row * cols + col`.
pub(crate) fn matricize(state: &QuditState, l: usize) -> ExactMatrix {
    let sizes = state.dims().sizes();
    let rows: usize = sizes[..l].iter().product();
    let cols: usize = sizes[l..].iter().product();
    let mut m = ExactMatrix::zeros(rows, cols);
    for (i, a) in state.iter() {
        m.set(i / cols, i % cols, a.clone());
    }
    m
}

/// Site permutation that brings `row_sites` (in the given order) to the front,
/// followed by the remaining sites in ascending order.
pub fn front_permutation(n: usize, row_sites: &[usize]) -> Result<SitePermutation> {
    let mut images = vec![0; n];
    let mut next = 1;
    for &s in row_sites {
        if s == 0 || s > n || images[s - 1] != 0 {
            return Err(Error::InvalidPermutation(format!("invalid or repeated site {s} in {row_sites:?}")));
        }
        images[s - 1] = next;
        next += 1;
    }
    for img in images.iter_mut() {
        if *img == 0 {
            *img = next;
            next += 1;
        }
    }
    SitePermutation::from_images(images)
}

/// `M M†` with `row_sites` as the row block. Equals the (unnormalized)
/// reduced density matrix of those sites.
pub fn reduced_density(state: &QuditState, row_sites: &[usize]) -> Result<ExactMatrix> {
    let n = state.n();
    if row_sites.is_empty() || row_sites.len() >= n {
        return Err(Error::InvalidPermutation(format!(
            "row sites {row_sites:?} must be a nonempty proper subset of 1..={n}"
        )));
    }
    let perm = front_permutation(n, row_sites)?;
    let m = matricize(&permute_qudits(state, &perm)?, row_sites.len());
    m.mul(&m.adjoint())
}

/// Product over the canonical set of `min(row dimension, column dimension)`.
pub fn split_capacity(dims: &Dims, l: Split) -> Result<BigUint> {
    let n = dims.n();
    let l = Split::new(l.get(), n)?;
    let mut p = BigUint::one();
    for sigma in &permutation_set(n, l) {
        let perm = sigma.to_site_permutation(n)?;
        let order = perm.inverse();
        // order.images()[pos] is the site landing at position pos+1
        let permuted: Vec<usize> = order.images().iter().map(|&site| dims.site(site)).collect();
        let rows: usize = permuted[..l.get()].iter().product();
        let cols: usize = permuted[l.get()..].iter().product();
        p *= BigUint::from(rows.min(cols));
    }
    Ok(p)
}

/// Split with the largest capacity; ties go to the smallest `l`.
pub fn optimal_split(dims: &Dims) -> Split {
    let n = dims.n();
    let mut best: Option<(Split, BigUint)> = None;
    for l in 1..n {
        let split = Split(l);
        let cap = split_capacity(dims, split).expect("split in range");
        if best.as_ref().map_or(true, |(_, b)| cap > *b) {
            best = Some((split, cap));
        }
    }
    best.expect("n >= 2").0
}
