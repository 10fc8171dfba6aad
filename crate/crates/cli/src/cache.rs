//! Persistent F-table cache: one JSON document per directory.
//!
//! Only principal-curve tables are stored. A file written for another curve or
//! schema is skipped with a warning; a file that fails validation anywhere is
//! rejected as a whole, so nothing from it reaches the memo.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use qdvol_core::spectral::{memoized_f_tables, preload_f_table, FTable};
use qdvol_core::Rational;
use serde::{Deserialize, Serialize};

use crate::error::CliResult;
use crate::format::parse_rational;

pub const SCHEMA_VERSION: u32 = 1;
pub const FILE_NAME: &str = "ftables.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveTag {
    pub a: String,
    pub b: i64,
}

impl CurveTag {
    pub fn principal() -> Self {
        CurveTag { a: "-1".into(), b: 2 }
    }

    fn is_principal(&self) -> bool {
        self.b == 2 && (parse_rational(&self.a).or_else(|| self.a.trim().parse::<BigInt>().ok().map(Rational::from_integer)))
            == Some(Rational::from_integer(BigInt::from(-1)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub g: u32,
    pub n: u32,
    /// Decreasing.
    pub indices: Vec<u32>,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub schema_version: u32,
    pub curve: CurveTag,
    pub entries: Vec<CacheEntry>,
}

#[derive(Deserialize)]
struct Header {
    schema_version: u32,
    curve: CurveTag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoadStatus {
    Missing,
    Loaded { tables: usize, fresh: usize },
    Skipped(String),
    Rejected(String),
}

impl LoadStatus {
    /// A line for stderr when the status deserves attention.
    pub fn warning(&self) -> Option<String> {
        match self {
            LoadStatus::Skipped(why) => Some(format!("warning: cache ignored: {why}")),
            LoadStatus::Rejected(why) => Some(format!("warning: cache rejected: {why}")),
            _ => None,
        }
    }
}

impl CacheFile {
    pub fn from_tables(tables: &[Arc<FTable>]) -> Self {
        let mut entries = Vec::new();
        for t in tables {
            for (k, v) in t.entries() {
                entries.push(CacheEntry {
                    g: t.g,
                    n: t.n,
                    indices: k.iter().map(|&i| i as u32).collect(),
                    num: v.numer().to_string(),
                    den: v.denom().to_string(),
                });
            }
        }
        CacheFile { schema_version: SCHEMA_VERSION, curve: CurveTag::principal(), entries }
    }

    /// Validates every entry and groups them into tables.
    pub fn into_tables(self) -> Result<Vec<FTable>, String> {
        let mut tables: Vec<FTable> = Vec::new();
        for (i, e) in self.entries.into_iter().enumerate() {
            let bad = |why: &str| format!("entry {i} ({}, {}, {:?}): {why}", e.g, e.n, e.indices);
            if e.n == 0 || 2 * e.g as i64 - 2 + e.n as i64 <= 0 {
                return Err(bad("not a stable (g, n) with n >= 1"));
            }
            if e.indices.len() != e.n as usize {
                return Err(bad("index count differs from n"));
            }
            if e.indices.windows(2).any(|w| w[0] < w[1]) {
                return Err(bad("indices not in decreasing order"));
            }
            let top = 3 * e.g as i64 - 3 + e.n as i64;
            if e.indices.iter().map(|&k| k as i64).sum::<i64>() > top {
                return Err(bad("indices exceed total degree 3g - 3 + n"));
            }
            let num: BigInt = e.num.parse().map_err(|_| bad("numerator is not an integer"))?;
            let den: BigInt = e.den.parse().map_err(|_| bad("denominator is not an integer"))?;
            if !den.is_positive() {
                return Err(bad("denominator must be positive"));
            }
            if num.is_zero() {
                return Err(bad("zero entries are never stored"));
            }
            let idx: Vec<usize> = e.indices.iter().map(|&k| k as usize).collect();
            let pos = match tables.iter().position(|t| (t.g, t.n) == (e.g, e.n)) {
                Some(p) => p,
                None => {
                    tables.push(FTable::new(e.g, e.n));
                    tables.len() - 1
                }
            };
            if !tables[pos].get(&idx).is_zero() {
                return Err(bad("duplicate entry"));
            }
            tables[pos].insert(&idx, Rational::new(num, den));
        }
        Ok(tables)
    }
}

pub fn cache_path(dir: &Path) -> PathBuf {
    dir.join(FILE_NAME)
}

/// Reads and validates the cache file without touching the memo.
pub fn read(dir: &Path) -> Result<Vec<FTable>, LoadStatus> {
    let path = cache_path(dir);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Err(LoadStatus::Missing),
        Err(e) => return Err(LoadStatus::Rejected(format!("{}: {e}", path.display()))),
    };
    let header: Header = serde_json::from_str(&text)
        .map_err(|e| LoadStatus::Rejected(format!("{}: {e}", path.display())))?;
    if header.schema_version != SCHEMA_VERSION {
        return Err(LoadStatus::Skipped(format!(
            "{}: schema version {} (expected {SCHEMA_VERSION})",
            path.display(),
            header.schema_version
        )));
    }
    if !header.curve.is_principal() {
        return Err(LoadStatus::Skipped(format!(
            "{}: written for curve (a, b) = ({}, {}), expected (-1, 2)",
            path.display(),
            header.curve.a,
            header.curve.b
        )));
    }
    let file: CacheFile =
        serde_json::from_str(&text).map_err(|e| LoadStatus::Rejected(format!("{}: {e}", path.display())))?;
    file.into_tables().map_err(|why| LoadStatus::Rejected(format!("{}: {why}", path.display())))
}

/// Loads the cache into the in-memory memo.
pub fn load(dir: &Path) -> LoadStatus {
    match read(dir) {
        Ok(tables) => {
            let n = tables.len();
            let fresh = tables.into_iter().filter(|t| preload_f_table(t.clone())).count();
            LoadStatus::Loaded { tables: n, fresh }
        }
        Err(status) => status,
    }
}

/// Writes every memoized table, replacing the file atomically. Returns the table count.
pub fn store(dir: &Path) -> CliResult<usize> {
    fs::create_dir_all(dir)?;
    let tables = memoized_f_tables();
    let file = CacheFile::from_tables(&tables);
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer(&mut tmp, &file)?;
    tmp.write_all(b"\n")?;
    tmp.as_file().sync_all()?;
    tmp.persist(cache_path(dir)).map_err(|e| e.error)?;
    Ok(tables.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use qdvol_core::exact::rat;

    fn sample() -> CacheFile {
        let mut t = FTable::new(1, 2);
        t.insert(&[0, 0], rat(1, 32));
        t.insert(&[1, 0], rat(-1, 32));
        CacheFile::from_tables(&[Arc::new(t)])
    }

    #[test]
    fn round_trips() {
        let f = sample();
        let text = serde_json::to_string(&f).unwrap();
        let back: CacheFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        let tables = back.into_tables().unwrap();
        assert_eq!(tables[0].get(&[0, 1]), rat(-1, 32));
    }

    #[test]
    fn zero_denominator_rejects_file() {
        let mut f = sample();
        f.entries[1].den = "0".into();
        assert!(f.into_tables().unwrap_err().contains("denominator"));
    }

    #[test]
    fn malformed_entries_reject_file() {
        let mut f = sample();
        f.entries[0].indices = vec![0, 1];
        assert!(f.into_tables().is_err());
        let mut f = sample();
        f.entries.push(f.entries[0].clone());
        assert!(f.into_tables().unwrap_err().contains("duplicate"));
    }

    #[test]
    fn curve_tag_accepts_equivalent_forms() {
        assert!(CurveTag { a: "-1/1".into(), b: 2 }.is_principal());
        assert!(!CurveTag { a: "-1".into(), b: 3 }.is_principal());
    }
}
