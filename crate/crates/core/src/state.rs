//! Exact n-qudit pure states in the lexicographic computational basis.
//!
//! Sites are labelled `1..=n`; flat amplitude indices are 0-based with the
//! first site as the most significant digit.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Local dimensions `(d_1, ..., d_n)`, `n >= 2`, every `d_k >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dims(Vec<usize>);

impl Dims {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.len() < 2 {
            return Err(Error::InvalidDims(format!("need at least 2 sites, got {}", sizes.len())));
        }
        if let Some(d) = sizes.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidDims(format!("every local dimension must be >= 2, got {d}")));
        }
        sizes
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::InvalidDims("total dimension overflows".into()))?;
        Ok(Dims(sizes))
    }

    /// `n` copies of `d`.
    pub fn uniform(n: usize, d: usize) -> Result<Self> {
        Self::new(vec![d; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    /// Local dimension of 1-based `site`.
    pub fn site(&self, site: usize) -> usize {
        self.0[site - 1]
    }

    /// Total dimension `D = d_1 * ... * d_n`.
    pub fn total(&self) -> usize {
        self.0.iter().product()
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Basis label `(s_1, ..., s_n)`.
pub type MultiIndex = Vec<usize>;

/// Mixed-radix encoding: `sum_k s_k * prod_{j>k} d_j`.
pub fn flat_index(digits: &[usize], dims: &Dims) -> Result<usize> {
    if digits.len() != dims.n() {
        return Err(Error::InvalidIndex(format!(
            "multi-index has {} digits, dims have {} sites",
            digits.len(),
            dims.n()
        )));
    }
    let mut i = 0usize;
    for (k, (&s, &d)) in digits.iter().zip(dims.sizes()).enumerate() {
        if s >= d {
            return Err(Error::InvalidIndex(format!("digit {s} at site {} exceeds d={d}", k + 1)));
        }
        i = i * d + s;
    }
    Ok(i)
}

pub fn multiindex_of(i: usize, dims: &Dims) -> Result<MultiIndex> {
    if i >= dims.total() {
        return Err(Error::InvalidIndex(format!("flat index {i} out of range for D={}", dims.total())));
    }
    Ok(decode(i, dims.sizes()))
}

/// Mixed-radix digits of `i` over `radices`, without range checks.
pub(crate) fn decode(mut i: usize, radices: &[usize]) -> MultiIndex {
    let mut digits = vec![0; radices.len()];
    for (slot, &d) in digits.iter_mut().zip(radices).rev() {
        *slot = i % d;
        i /= d;
    }
    digits
}

pub(crate) fn encode(digits: impl IntoIterator<Item = usize>, radices: &[usize]) -> usize {
    digits.into_iter().zip(radices).fold(0, |acc, (s, &d)| acc * d + s)
}

/// A relabelling of sites: site `i` moves to position `image(i)` (both 1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SitePermutation(Vec<usize>);

impl SitePermutation {
    pub fn identity(n: usize) -> Self {
        SitePermutation((1..=n).collect())
    }

    /// `images[i-1]` is the new position of site `i`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &p in &images {
            if p == 0 || p > n || seen[p - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection on 1..={n}")));
            }
            seen[p - 1] = true;
        }
        Ok(SitePermutation(images))
    }

    /// The product of the given transpositions on `n` sites.
    pub fn from_transpositions(n: usize, swaps: &[(usize, usize)]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        for &(a, b) in swaps {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::InvalidPermutation(format!("transposition ({a},{b}) outside 1..={n}")));
            }
            for p in images.iter_mut() {
                if *p == a {
                    *p = b;
                } else if *p == b {
                    *p = a;
                }
            }
        }
        Ok(SitePermutation(images))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, site: usize) -> usize {
        self.0[site - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SitePermutation) -> SitePermutation {
        assert_eq!(self.n(), other.n(), "composing permutations of different size");
        SitePermutation(other.0.iter().map(|&p| self.0[p - 1]).collect())
    }

    pub fn inverse(&self) -> SitePermutation {
        let mut inv = vec![0; self.n()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p - 1] = i + 1;
        }
        SitePermutation(inv)
    }

    /// The site that ends up at 1-based `position`.
    pub(crate) fn preimage_order(&self) -> Vec<usize> {
        self.inverse().0
    }
}

/// Sparse pure state: only nonzero amplitudes are stored, keyed by flat index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuditState {
    dims: Dims,
    amplitudes: BTreeMap<usize, ExactScalar>,
}

impl QuditState {
    /// Builds a state from flat-index amplitudes; zeros are dropped.
    pub fn from_flat(dims: Dims, amplitudes: impl IntoIterator<Item = (usize, ExactScalar)>) -> Result<Self> {
        let total = dims.total();
        let mut map = BTreeMap::new();
        for (i, a) in amplitudes {
            if i >= total {
                return Err(Error::InvalidIndex(format!("flat index {i} out of range for D={total}")));
            }
            if map.contains_key(&i) {
                return Err(Error::DuplicateIndex(decode(i, dims.sizes())));
            }
            map.insert(i, a);
        }
        map.retain(|_, a| !a.is_zero());
        if map.is_empty() {
            return Err(Error::ZeroState);
        }
        Ok(QuditState { dims, amplitudes: map })
    }

    pub fn from_terms(dims: Dims, terms: impl IntoIterator<Item = (MultiIndex, ExactScalar)>) -> Result<Self> {
        let flat = terms
            .into_iter()
            .map(|(m, a)| flat_index(&m, &dims).map(|i| (i, a)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_flat(dims, flat)
    }

    pub fn from_dense(dims: Dims, amplitudes: Vec<ExactScalar>) -> Result<Self> {
        if amplitudes.len() != dims.total() {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for D={}",
                amplitudes.len(),
                dims.total()
            )));
        }
        Self::from_flat(dims, amplitudes.into_iter().enumerate())
    }

    /// Equal-weight superposition of kets written as digit strings, e.g. `["0000", "1113"]`.
    /// Only meaningful when every local dimension is at most 10.
    pub fn from_kets(dims: Dims, kets: &[&str]) -> Result<Self> {
        let terms = kets
            .iter()
            .map(|k| {
                let digits = k
                    .chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::InvalidIndex(format!("ket {k:?} is not a digit string")))?;
                Ok((digits, ExactScalar::from_integer(1)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(dims, terms)
    }

    pub fn basis(dims: Dims, digits: &[usize]) -> Result<Self> {
        Self::from_terms(dims, [(digits.to_vec(), ExactScalar::from_integer(1))])
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn n(&self) -> usize {
        self.dims.n()
    }

    /// Number of nonzero amplitudes.
    pub fn support_len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitude(&self, flat: usize) -> ExactScalar {
        self.amplitudes.get(&flat).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn amplitude_at(&self, digits: &[usize]) -> Result<ExactScalar> {
        Ok(self.amplitude(flat_index(digits, &self.dims)?))
    }

    /// Nonzero amplitudes in ascending flat-index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &ExactScalar)> {
        self.amplitudes.iter().map(|(&i, a)| (i, a))
    }

    /// Nonzero amplitudes with their multi-indices.
    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, &ExactScalar)> {
        self.amplitudes.iter().map(|(&i, a)| (decode(i, self.dims.sizes()), a))
    }

    pub fn to_dense(&self) -> Vec<ExactScalar> {
        let mut v = vec![ExactScalar::zero(); self.dims.total()];
        for (&i, a) in &self.amplitudes {
            v[i] = a.clone();
        }
        v
    }

    /// Multiplies every amplitude by a nonzero scalar.
    pub fn scaled(&self, k: &ExactScalar) -> Result<QuditState> {
        Self::from_flat(self.dims.clone(), self.iter().map(|(i, a)| (i, a * k)))
    }
}

/// Moves site `i` to position `perm.image(i)`; dims are permuted along with the digits.
pub fn permute_qudits(state: &QuditState, perm: &SitePermutation) -> Result<QuditState> {
    let n = state.n();
    if perm.n() != n {
        return Err(Error::InvalidPermutation(format!(
            "permutation on {} sites applied to a {n}-site state",
            perm.n()
        )));
    }
    let order = perm.preimage_order();
    let new_sizes: Vec<usize> = order.iter().map(|&site| state.dims.site(site)).collect();
    let new_dims = Dims(new_sizes);
    let amplitudes = state
        .terms()
        .map(|(digits, a)| {
            let moved = order.iter().map(|&site| digits[site - 1]);
            (encode(moved, new_dims.sizes()), a.clone())
        })
        .collect();
    Ok(QuditState {
        dims: new_dims,
        amplitudes,
    })
}

impl fmt::Display for QuditState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.dims.sizes().iter().any(|&d| d > 10);
        let mut first = true;
        for (digits, a) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let label: Vec<String> = digits.iter().map(ToString::to_string).collect();
            let label = if wide { label.join(",") } else { label.concat() };
            if *a == ExactScalar::from_integer(1) {
                write!(f, "|{label}⟩")?;
            } else {
                write!(f, "({a})|{label}⟩")?;
            }
        }
        Ok(())
    }
}
