//! Representative states of the 22 families of the 2⊗2⊗2⊗4 system at `l = 2`,
//! σ set `{I, (1,3), (1,4)}`, transcribed verbatim with their published rank
//! triples.
//!
//! Transcription checksum (FNV-1a 64 over [`canonical_transcription`]):
//! `0x79a1c39e1fd88279`. A change to any ket or triple changes it.
//!
//! Three published rows do not reproduce: the `F{4,4,4}` representative has
//! site 3 in a product factor and computes to `(4,2,2)`, and the `F{4,4,1}` and
//! `F{1,4,4}` representatives compute to each other's triple. The entries
//! below keep the published text; [`table1_corrections`] lists replacements
//! that do reproduce the published triples.

use crate::classify::{family_label, FamilyLabel, RankSignature};
use crate::error::Result;
use crate::matricize::{permutation_set, Split};
use crate::state::{Dims, QuditState};

/// `(published triple, kets)`, all amplitudes 1, in published row order.
pub const TABLE1: &[([usize; 3], &[&str])] = &[
    ([4, 4, 4], &["0000", "0010", "0101", "0111", "1002", "1012", "1103", "1113"]),
    ([4, 4, 3], &["0000", "1010", "1001", "0102", "1113"]),
    ([4, 3, 4], &["0000", "0110", "1100", "1002", "1113"]),
    ([3, 4, 4], &["0000", "0110", "1100", "0012", "1113"]),
    ([4, 3, 3], &["0000", "0111", "1012", "1113"]),
    ([3, 4, 3], &["0000", "1101", "1012", "1113"]),
    ([3, 3, 4], &["0000", "0111", "1102", "1113"]),
    ([4, 4, 2], &["0000", "1010", "0102", "1113"]),
    ([4, 2, 4], &["0000", "0110", "1002", "1113"]),
    ([2, 4, 4], &["0000", "1100", "0012", "1113"]),
    ([3, 3, 3], &["0000", "1010", "1001", "1113"]),
    ([3, 3, 2], &["0000", "1010", "1112"]),
    ([3, 2, 3], &["0000", "1001", "1112"]),
    ([2, 3, 3], &["0000", "1100", "1112"]),
    ([2, 2, 2], &["1010", "1100", "1001"]),
    ([2, 2, 2], &["0001", "0010", "0100", "1000"]),
    ([2, 2, 2], &["0000", "1111"]),
    ([4, 4, 1], &["0000", "0011", "1100", "1111"]),
    ([4, 1, 4], &["0000", "1001", "0110", "1111"]),
    ([1, 4, 4], &["0000", "1010", "0101", "1111"]),
    ([2, 2, 1], &["1100", "1001"]),
    ([2, 1, 2], &["1100", "1010"]),
    ([1, 2, 2], &["1010", "1001"]),
    ([1, 1, 1], &["0000"]),
];

pub const TABLE1_CHECKSUM: u64 = 0x79a1c39e1fd88279;

pub fn table1_dims() -> Dims {
    Dims::new(vec![2, 2, 2, 4]).expect("static dims")
}

pub fn table1_split() -> Split {
    Split::new(2, 4).expect("static split")
}

/// One row of the table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Entry {
    pub row: usize,
    pub kets: &'static [&'static str],
    pub state: QuditState,
    pub expected_ranks: [usize; 3],
    pub expected_label: FamilyLabel,
}

fn expected_label(ranks: [usize; 3]) -> FamilyLabel {
    family_label(&RankSignature {
        dims: table1_dims(),
        sigmas: permutation_set(4, table1_split()),
        ranks: ranks.to_vec(),
    })
}

/// The 24 published representatives with their published labels.
pub fn table1_suite() -> Vec<Table1Entry> {
    TABLE1
        .iter()
        .enumerate()
        .map(|(row, &(ranks, kets))| Table1Entry {
            row: row + 1,
            kets,
            state: QuditState::from_kets(table1_dims(), kets).expect("static kets are valid"),
            expected_ranks: ranks,
            expected_label: expected_label(ranks),
        })
        .collect()
}

/// Representatives that realise the triples of the three rows that do not
/// reproduce as printed: `(published row, triple, kets)`.
pub fn table1_corrections() -> Result<Vec<(usize, [usize; 3], QuditState)>> {
    let fixes: [(usize, [usize; 3], &[&str]); 3] = [
        (1, [4, 4, 4], &["0000", "0111", "1012", "1103"]),
        (18, [4, 4, 1], &["0000", "1010", "0101", "1111"]),
        (20, [1, 4, 4], &["0000", "0011", "1100", "1111"]),
    ];
    fixes
        .into_iter()
        .map(|(row, ranks, kets)| Ok((row, ranks, QuditState::from_kets(table1_dims(), kets)?)))
        .collect()
}

/// `a,b,c:ket+ket+...` per row, rows joined by `;`.
pub fn canonical_transcription() -> String {
    TABLE1
        .iter()
        .map(|(r, kets)| format!("{},{},{}:{}", r[0], r[1], r[2], kets.join("+")))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn transcription_checksum() -> u64 {
    canonical_transcription()
        .bytes()
        .fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn suite_shape() {
        let suite = table1_suite();
        assert_eq!(suite.len(), 24);
        let labels: BTreeSet<_> = suite.iter().map(|e| e.expected_label.clone()).collect();
        assert_eq!(labels.len(), 22);
        assert_eq!(suite[23].state.to_string(), "|0000⟩");
        let f212 = suite.iter().find(|e| e.expected_ranks == [2, 1, 2]).unwrap();
        assert_eq!(f212.kets, &["1100", "1010"]);
        assert_eq!(suite.iter().filter(|e| e.expected_ranks == [2, 2, 2]).count(), 3);
    }

    #[test]
    fn checksum_pins_transcription() {
        assert_eq!(transcription_checksum(), TABLE1_CHECKSUM);
    }
}
