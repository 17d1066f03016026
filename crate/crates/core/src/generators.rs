//! GHZ, W and Dicke-type states.
//!
//! Every generator emits amplitude 1 per term; the normalization prefactor is
//! dropped because ranks do not see a global scale.

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;
use crate::state::{encode, Dims, QuditState};

/// `|0..0⟩ + |1..1⟩ + ... + |d-1..d-1⟩` on `n` sites of dimension `d`.
pub fn gen_ghz(n: usize, d: usize) -> Result<QuditState> {
    if n < 2 || d < 2 {
        return Err(Error::InvalidParameters(format!("GHZ needs n >= 2 and d >= 2, got n={n}, d={d}")));
    }
    let dims = Dims::uniform(n, d)?;
    let terms = (0..d).map(|j| (vec![j; n], ExactScalar::from_integer(1)));
    QuditState::from_terms(dims, terms)
}

/// Qubit W state: every single-excitation ket with weight 1.
pub fn gen_w(n: usize) -> Result<QuditState> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("W needs n >= 2, got {n}")));
    }
    let dims = Dims::uniform(n, 2)?;
    let terms = (0..n).map(|k| {
        let mut digits = vec![0; n];
        digits[k] = 1;
        (digits, ExactScalar::from_integer(1))
    });
    QuditState::from_terms(dims, terms)
}

/// Symmetric superposition of every arrangement of `occupations[k]` sites in
/// level `k`, over `levels = occupations.len()` levels and `n = sum` sites.
pub fn dicke_state(occupations: &[usize]) -> Result<QuditState> {
    let levels = occupations.len();
    let n: usize = occupations.iter().sum();
    if levels < 2 || n < 2 {
        return Err(Error::InvalidParameters(format!(
            "Dicke state needs >= 2 levels and >= 2 sites, got occupations {occupations:?}"
        )));
    }
    let dims = Dims::uniform(n, levels)?;
    let mut flat = Vec::new();
    let mut remaining = occupations.to_vec();
    let mut digits = Vec::with_capacity(n);
    arrangements(&mut remaining, &mut digits, n, &mut |d| flat.push(encode(d.iter().copied(), dims.sizes())));
    QuditState::from_flat(dims, flat.into_iter().map(|i| (i, ExactScalar::from_integer(1))))
}

// depth-first over distinct arrangements of a multiset, in lexicographic order
fn arrangements(remaining: &mut [usize], digits: &mut Vec<usize>, n: usize, emit: &mut impl FnMut(&[usize])) {
    if digits.len() == n {
        emit(digits);
        return;
    }
    for level in 0..remaining.len() {
        if remaining[level] == 0 {
            continue;
        }
        remaining[level] -= 1;
        digits.push(level);
        arrangements(remaining, digits, n, emit);
        digits.pop();
        remaining[level] += 1;
    }
}

/// Three-level Dicke state with `l1` ones, `l2` twos and `n - l1 - l2` zeros.
/// Requires `l1 + l2 <= n - 1`.
pub fn gen_dicke3(n: usize, l1: usize, l2: usize) -> Result<QuditState> {
    if n < 2 || l1 + l2 > n - 1 {
        return Err(Error::InvalidParameters(format!(
            "D3 needs n >= 2 and l1 + l2 <= n - 1, got n={n}, l1={l1}, l2={l2}"
        )));
    }
    dicke_state(&[n - l1 - l2, l1, l2])
}

/// Four-level analogue of [`gen_dicke3`]; requires `l1 + l2 + l3 <= n - 1`.
pub fn gen_dicke4(n: usize, l1: usize, l2: usize, l3: usize) -> Result<QuditState> {
    if n < 2 || l1 + l2 + l3 > n - 1 {
        return Err(Error::InvalidParameters(format!(
            "D4 needs n >= 2 and l1 + l2 + l3 <= n - 1, got n={n}, l1={l1}, l2={l2}, l3={l3}"
        )));
    }
    dicke_state(&[n - l1 - l2 - l3, l1, l2, l3])
}
