//! Rank signatures and family labels.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matricize::{matricize, optimal_split, permutation_set, PermutationSet, Split};
use crate::rank::rank_exact;
use crate::state::{permute_qudits, Dims, QuditState};

/// Which split to classify at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitChoice {
    /// The split with the largest capacity.
    Auto,
    Fixed(usize),
}

impl SplitChoice {
    pub fn resolve(self, dims: &Dims) -> Result<Split> {
        match self {
            SplitChoice::Auto => Ok(optimal_split(dims)),
            SplitChoice::Fixed(l) => Split::new(l, dims.n()),
        }
    }
}

impl std::str::FromStr for SplitChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(SplitChoice::Auto);
        }
        s.parse()
            .map(SplitChoice::Fixed)
            .map_err(|_| Error::InvalidParameters(format!("split must be a positive integer or `auto`, got {s:?}")))
    }
}

/// Ranks of the coefficient matrices over a canonical permutation set, in set order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankSignature {
    pub dims: Dims,
    pub sigmas: PermutationSet,
    pub ranks: Vec<usize>,
}

impl RankSignature {
    pub fn split(&self) -> Split {
        self.sigmas.split()
    }

    /// True when every rank is 1.
    pub fn is_all_ones(&self) -> bool {
        self.ranks.iter().all(|&r| r == 1)
    }
}

/// Canonical rendering of a signature, e.g. `F{4,4,3}@{I,(1,3),(1,4)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyLabel(String);

impl FamilyLabel {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn family_label(sig: &RankSignature) -> FamilyLabel {
    let ranks: Vec<String> = sig.ranks.iter().map(ToString::to_string).collect();
    FamilyLabel(format!("F{{{}}}@{}", ranks.join(","), sig.sigmas))
}

/// Rank of every canonical coefficient matrix at the chosen split.
///
/// Permutations that map the state onto an identical permuted state (common for
/// symmetric states) share one rank computation.
pub fn signature(state: &QuditState, l: SplitChoice) -> Result<RankSignature> {
    let split = l.resolve(state.dims())?;
    let n = state.n();
    let sigmas = permutation_set(n, split);

    let permuted = sigmas
        .iter()
        .map(|sigma| permute_qudits(state, &sigma.to_site_permutation(n)?))
        .collect::<Result<Vec<_>>>()?;
    let mut slot_of: HashMap<&QuditState, usize> = HashMap::new();
    let mut unique: Vec<&QuditState> = Vec::new();
    let slots: Vec<usize> = permuted
        .iter()
        .map(|p| {
            *slot_of.entry(p).or_insert_with(|| {
                unique.push(p);
                unique.len() - 1
            })
        })
        .collect();
    let unique_ranks: Vec<usize> = unique
        .par_iter()
        .map(|p| rank_exact(&matricize(p, split.get())).rank)
        .collect();

    Ok(RankSignature {
        dims: state.dims().clone(),
        sigmas,
        ranks: slots.into_iter().map(|s| unique_ranks[s]).collect(),
    })
}

/// One classified input state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classified {
    pub id: String,
    pub signature: RankSignature,
    pub label: FamilyLabel,
}

/// Signatures for a batch of states sharing one dims; input order is kept.
pub fn classify_states(states: &[(String, QuditState)], l: SplitChoice) -> Result<Vec<Classified>> {
    let Some((_, first)) = states.first() else {
        return Ok(Vec::new());
    };
    let dims = first.dims();
    if let Some((id, s)) = states.iter().find(|(_, s)| s.dims() != dims) {
        return Err(Error::MixedDims(format!("state {id} has dims ({}), expected ({dims})", s.dims())));
    }
    let split = l.resolve(dims)?;
    states
        .par_iter()
        .map(|(id, s)| {
            let signature = signature(s, SplitChoice::Fixed(split.get()))?;
            let label = family_label(&signature);
            Ok(Classified {
                id: id.clone(),
                signature,
                label,
            })
        })
        .collect()
}

/// Groups state ids by family label, labels in lexicographic order.
pub fn classify(states: &[(String, QuditState)], l: SplitChoice) -> Result<BTreeMap<FamilyLabel, Vec<String>>> {
    let mut groups: BTreeMap<FamilyLabel, Vec<String>> = BTreeMap::new();
    for c in classify_states(states, l)? {
        groups.entry(c.label).or_default().push(c.id);
    }
    Ok(groups)
}
