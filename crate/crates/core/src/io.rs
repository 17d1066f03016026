//! State files.
//!
//! ```json
//! {
//!   "dims": [2, 2, 3],
//!   "amplitudes": [
//!     {"index": [0, 1, 2], "re": "1/3", "im": "0"}
//!   ]
//! }
//! ```
//!
//! Rationals are strings (`"p/q"` or `"p"`). Unknown fields and repeated
//! indices are rejected; zero amplitudes are dropped; an all-zero state is an error.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, ExactScalar};
use crate::state::{flat_index, Dims, QuditState};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    dims: Vec<usize>,
    amplitudes: Vec<AmplitudeEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AmplitudeEntry {
    index: Vec<usize>,
    re: String,
    im: String,
}

/// 1-based line of the `k`-th (0-based) `"index"` key, for error context.
fn line_of_entry(text: &str, k: usize) -> Option<usize> {
    let offset = text.match_indices("\"index\"").nth(k)?.0;
    Some(text[..offset].matches('\n').count() + 1)
}

pub fn parse_state_str(text: &str) -> Result<QuditState> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: Some(e.line()),
        message: e.to_string(),
    })?;
    let dims = Dims::new(file.dims)?;
    let mut seen = BTreeSet::new();
    let mut terms = Vec::with_capacity(file.amplitudes.len());
    for (k, entry) in file.amplitudes.into_iter().enumerate() {
        let at = |message: String| Error::Parse {
            line: line_of_entry(text, k),
            message: format!("amplitude #{}: {message}", k + 1),
        };
        let flat = flat_index(&entry.index, &dims).map_err(|e| at(e.to_string()))?;
        if !seen.insert(flat) {
            return Err(at(format!("duplicate index {:?}", entry.index)));
        }
        let re = parse_rational(&entry.re).map_err(|e| at(e.to_string()))?;
        let im = parse_rational(&entry.im).map_err(|e| at(e.to_string()))?;
        terms.push((flat, ExactScalar::new(re, im)));
    }
    QuditState::from_flat(dims, terms)
}

pub fn parse_state_file(path: impl AsRef<Path>) -> Result<QuditState> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_state_str(&text)
}

/// Pretty JSON, amplitudes in ascending flat-index order, trailing newline.
pub fn state_to_json(state: &QuditState) -> String {
    let file = StateFile {
        dims: state.dims().sizes().to_vec(),
        amplitudes: state
            .terms()
            .map(|(index, a)| AmplitudeEntry {
                index,
                re: format_rational(a.re()),
                im: format_rational(a.im()),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("state file serializes");
    s.push('\n');
    s
}

pub fn write_state_file(path: impl AsRef<Path>, state: &QuditState) -> Result<()> {
    fs::write(path, state_to_json(state))?;
    Ok(())
}
