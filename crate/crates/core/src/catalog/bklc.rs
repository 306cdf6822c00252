//! Snapshot tables of best known binary linear codes.
//!
//! Format: the header line `n,k,d_best,d_upper` followed by one CSV row per
//! (n, k). An empty file is an empty table.

use std::collections::HashMap;
use std::path::Path;

use super::record::{Classification, CodeRecord};
use super::CatalogError;

pub const BKLC_HEADER: &str = "n,k,d_best,d_upper";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BklcEntry {
    pub n: usize,
    pub k: usize,
    pub d_best: u32,
    pub d_upper: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BklcTable {
    entries: HashMap<(usize, usize), BklcEntry>,
}

impl BklcTable {
    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let mut entries = HashMap::new();
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        match lines.next() {
            None => return Ok(Self::default()),
            Some((_, h)) if h.trim() == BKLC_HEADER => {}
            Some((i, h)) => {
                return Err(CatalogError::Parse {
                    line: i + 1,
                    msg: format!("expected header {BKLC_HEADER:?}, found {h:?}"),
                })
            }
        }
        for (i, line) in lines {
            let line_no = i + 1;
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let parsed: Vec<u64> = fields
                .iter()
                .map(|f| f.parse::<u64>())
                .collect::<Result<_, _>>()
                .map_err(|_| CatalogError::Parse { line: line_no, msg: format!("non-numeric field in {line:?}") })?;
            let [n, k, d_best, d_upper] = parsed[..] else {
                return Err(CatalogError::Parse {
                    line: line_no,
                    msg: format!("expected 4 fields, found {}", fields.len()),
                });
            };
            let entry = BklcEntry { n: n as usize, k: k as usize, d_best: d_best as u32, d_upper: d_upper as u32 };
            if entry.d_best > entry.d_upper {
                return Err(CatalogError::Validation(format!(
                    "line {line_no}: d_best {d_best} exceeds d_upper {d_upper}"
                )));
            }
            if entry.k > entry.n {
                return Err(CatalogError::Validation(format!("line {line_no}: dimension {k} exceeds length {n}")));
            }
            if entries.insert((entry.n, entry.k), entry).is_some() {
                return Err(CatalogError::Validation(format!("line {line_no}: duplicate entry for ({n},{k})")));
            }
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self, CatalogError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&BklcEntry> {
        self.entries.get(&(n, k))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn load_bklc(path: &Path) -> Result<BklcTable, CatalogError> {
    BklcTable::load(path)
}

/// Places a distance against a table entry.
///
/// | Gray image | d = d_best | d_best < d <= d_upper | d > d_upper  |
/// |------------|------------|-----------------------|--------------|
/// | linear     | good       | great                 | inconsistent |
/// | non-linear | decent     | good                  | very good    |
///
/// Anything below d_best is `None`.
pub fn classify_against(d: u32, gray_linear: bool, entry: &BklcEntry) -> Classification {
    use Classification::*;
    if d < entry.d_best {
        None
    } else if d == entry.d_best {
        if gray_linear { Good } else { Decent }
    } else if d <= entry.d_upper {
        if gray_linear { Great } else { Good }
    } else if gray_linear {
        Inconsistent
    } else {
        VeryGood
    }
}

/// Classifies a record with an exact distance against the table.
pub fn classify(rec: &CodeRecord, table: &BklcTable) -> Result<Classification, CatalogError> {
    let d = rec.exact_d().ok_or(CatalogError::NotExact(rec.key()))?;
    let (n2, k2dim, _) = rec.gray_params();
    let entry = table.get(n2, k2dim).ok_or(CatalogError::MissingBklc { n: n2, k: k2dim })?;
    Ok(classify_against(d, rec.gray_linear, entry))
}
