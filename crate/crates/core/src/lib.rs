//! Exact SLOCC family classification of n-qudit pure states.
//!
//! A state's amplitude tensor is matricized for a split `l` and a canonical set
//! of qudit permutations; the ranks of those coefficient matrices are invariant
//! under invertible local operators and never increase under arbitrary ones,
//! so the tuple of ranks labels a SLOCC family.

pub mod classify;
pub mod error;
pub(crate) mod gauss;
pub mod generators;
pub mod io;
pub mod matricize;
pub mod matrix;
pub mod rank;
pub mod report;
pub mod sampling;
pub mod scan;
pub mod scalar;
pub mod slocc;
pub mod state;
pub mod table1;

pub use error::{Error, Result};
pub use generators::{dicke_state, gen_dicke3, gen_dicke4, gen_ghz, gen_w};
pub use matricize::{
    coefficient_matrix, optimal_split, permutation_set, reduced_density, split_capacity, CoefficientMatrix,
    PermutationSet, QuditPermutation, Split,
};
pub use matrix::ExactMatrix;
pub use rank::{determinant, rank_exact, rank_numeric, NumericTolerance, RankMethod, RankResult};
pub use scalar::ExactScalar;
pub use state::{flat_index, multiindex_of, permute_qudits, Dims, MultiIndex, QuditState, SitePermutation};
pub use slocc::{
    apply_local, check_monotone_nonincrease, verify_theorem1, LocalOperator, LocalOperatorSet, TrialConfig, TrialKind,
    TrialOutcome, TrialReport,
};
pub use classify::{classify, classify_states, family_label, signature, FamilyLabel, RankSignature, SplitChoice};
pub use io::{parse_state_file, parse_state_str, state_to_json};
pub use scan::{dicke_scan, ScanRow};
pub use table1::{table1_suite, Table1Entry};
