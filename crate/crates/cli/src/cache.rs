//! On-disk Bernoulli cache.
//!
//! The file is UTF-8 JSON:
//!
//! ```json
//! {"format_version": 1, "max_index": 2,
//!  "entries": [{"index": 0, "num": "1", "den": "1"},
//!              {"index": 1, "num": "-1", "den": "2"},
//!              {"index": 2, "num": "1", "den": "6"}]}
//! ```
//!
//! Every load validates the structure and re-derives a few random entries
//! from their predecessors.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use genocchi_core::{BernoulliTable, BigInt, Rat};
use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

/// Entries re-derived on every load.
pub const SPOT_CHECKS: usize = 5;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("cache {path}: malformed JSON: {message}")]
    Malformed { path: PathBuf, message: String },
    #[error("cache {path}: unsupported format_version {found}")]
    Version { path: PathBuf, found: u32 },
    #[error("cache {path}: corrupt entry at index {index}: {reason}")]
    Corrupt {
        path: PathBuf,
        index: usize,
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub index: usize,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub format_version: u32,
    pub max_index: usize,
    pub entries: Vec<CacheEntry>,
}

impl CacheFile {
    pub fn from_table(table: &BernoulliTable) -> Self {
        CacheFile {
            format_version: FORMAT_VERSION,
            max_index: table.max_index(),
            entries: table
                .values()
                .iter()
                .enumerate()
                .map(|(index, b)| CacheEntry {
                    index,
                    num: b.num().to_string(),
                    den: b.den().to_string(),
                })
                .collect(),
        }
    }

    /// Validates the structural invariants and builds the table. `path` is
    /// only used for error messages.
    pub fn into_table(self, path: &Path) -> Result<BernoulliTable, CacheError> {
        let corrupt = |index: usize, reason: String| CacheError::Corrupt {
            path: path.to_path_buf(),
            index,
            reason,
        };
        if self.format_version != FORMAT_VERSION {
            return Err(CacheError::Version {
                path: path.to_path_buf(),
                found: self.format_version,
            });
        }
        if self.entries.len() != self.max_index + 1 {
            return Err(corrupt(
                self.entries.len().min(self.max_index),
                format!(
                    "{} entries for max_index {}",
                    self.entries.len(),
                    self.max_index
                ),
            ));
        }
        let mut values = Vec::with_capacity(self.entries.len());
        for (expected, e) in self.entries.into_iter().enumerate() {
            if e.index != expected {
                return Err(corrupt(expected, format!("found index {}", e.index)));
            }
            let num: BigInt = parse_decimal(&e.num)
                .ok_or_else(|| corrupt(expected, format!("numerator {:?}", e.num)))?;
            let den: BigInt = parse_decimal(&e.den)
                .ok_or_else(|| corrupt(expected, format!("denominator {:?}", e.den)))?;
            if den <= BigInt::from(0) {
                return Err(corrupt(expected, format!("denominator {den} is not positive")));
            }
            let r = Rat::new(num.clone(), den.clone());
            if r.num() != &num || r.den() != &den {
                return Err(corrupt(expected, format!("{num}/{den} is not in lowest terms")));
            }
            values.push(r);
        }
        if values[0] != Rat::one() {
            return Err(corrupt(0, format!("B_0 = {}", values[0])));
        }
        BernoulliTable::from_values(values).map_err(|e| corrupt(0, e.to_string()))
    }
}

/// Optional leading '-', then ASCII digits only.
fn parse_decimal(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Re-derives `count` random entries from their predecessors.
pub fn spot_check<R: Rng>(
    table: &BernoulliTable,
    path: &Path,
    rng: &mut R,
    count: usize,
) -> Result<(), CacheError> {
    let len = table.max_index() + 1;
    let mut picked = sample(rng, len, count.min(len)).into_vec();
    picked.sort_unstable();
    for index in picked {
        let stored = table.get(index).expect("sampled within range");
        let derived = table.rederive(index).expect("sampled within range");
        if &derived != stored {
            return Err(CacheError::Corrupt {
                path: path.to_path_buf(),
                index,
                reason: format!("stored {stored}, recurrence gives {derived}"),
            });
        }
    }
    Ok(())
}

/// Reads and validates a cache. A missing file yields `Ok(None)`.
pub fn load(path: &Path) -> Result<Option<BernoulliTable>, CacheError> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(source) => {
            return Err(CacheError::Io {
                path: path.to_path_buf(),
                source,
            })
        }
    };
    let file: CacheFile = serde_json::from_str(&text).map_err(|e| CacheError::Malformed {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let table = file.into_table(path)?;
    spot_check(&table, path, &mut rand::thread_rng(), SPOT_CHECKS)?;
    Ok(Some(table))
}

pub fn save(path: &Path, table: &BernoulliTable) -> Result<(), CacheError> {
    let io_err = |source| CacheError::Io {
        path: path.to_path_buf(),
        source,
    };
    let json = serde_json::to_string(&CacheFile::from_table(table))
        .expect("cache file serializes");
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err)?;
    }
    fs::write(path, json).map_err(io_err)
}

/// `B_0..=B_n`, served from the cache when it covers `n`. The cache is
/// regenerated only when a larger index is requested.
pub fn bernoulli_table(path: Option<&Path>, n: usize) -> Result<BernoulliTable, CacheError> {
    let Some(path) = path else {
        return Ok(BernoulliTable::compute(n));
    };
    if let Some(table) = load(path)? {
        if table.max_index() >= n {
            return Ok(table.truncated(n).expect("covers n"));
        }
    }
    let table = BernoulliTable::compute(n);
    save(path, &table)?;
    Ok(table)
}
