//! The code database: one record per (n, k1, k2), keeping the best exact
//! distance seen.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use tempfile::NamedTempFile;

use super::record::{parse_records, Classification, CodeRecord, Construction};
use super::CatalogError;

type Key = (usize, usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MergeOutcome {
    NewKey,
    Improved,
    Tied,
    Worse,
    /// No exact distance; never stored.
    Deferred,
    /// Fails the record invariants; never stored.
    Rejected,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MergeReport {
    pub new_keys: usize,
    pub improved: usize,
    pub tied: usize,
    pub worse: usize,
    pub deferred: usize,
    pub rejected: usize,
    /// Advisory remarks, e.g. a record beaten by another type with the same
    /// Gray image dimension.
    pub notes: Vec<String>,
}

impl MergeReport {
    fn count(&mut self, o: MergeOutcome) {
        match o {
            MergeOutcome::NewKey => self.new_keys += 1,
            MergeOutcome::Improved => self.improved += 1,
            MergeOutcome::Tied => self.tied += 1,
            MergeOutcome::Worse => self.worse += 1,
            MergeOutcome::Deferred => self.deferred += 1,
            MergeOutcome::Rejected => self.rejected += 1,
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "new={} improved={} tied={} worse={} deferred={} rejected={}",
            self.new_keys, self.improved, self.tied, self.worse, self.deferred, self.rejected
        )
    }
}

/// Filter for [`CodeDatabase::query`]. Unset fields match everything.
#[derive(Debug, Clone, Default)]
pub struct Query {
    pub n: Option<usize>,
    pub k1: Option<usize>,
    pub k2: Option<usize>,
    pub construction: Option<Construction>,
    pub classification: Option<Classification>,
}

impl Query {
    fn matches(&self, r: &CodeRecord) -> bool {
        self.n.is_none_or(|v| v == r.n)
            && self.k1.is_none_or(|v| v == r.k1)
            && self.k2.is_none_or(|v| v == r.k2)
            && self.construction.is_none_or(|v| v == r.construction)
            && self.classification.is_none_or(|v| Some(v) == r.classification)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CodeDatabase {
    records: BTreeMap<Key, CodeRecord>,
}

impl CodeDatabase {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, n: usize, k1: usize, k2: usize) -> Option<&CodeRecord> {
        self.records.get(&(n, k1, k2))
    }

    pub fn iter(&self) -> impl Iterator<Item = &CodeRecord> {
        self.records.values()
    }

    /// Merges one record. A stored record is only replaced by a strictly
    /// larger exact distance; ties keep the stored record.
    pub fn insert(&mut self, rec: CodeRecord) -> MergeOutcome {
        if rec.validate().is_err() {
            return MergeOutcome::Rejected;
        }
        let Some(d) = rec.exact_d() else {
            return MergeOutcome::Deferred;
        };
        match self.records.get(&rec.key()).and_then(CodeRecord::exact_d) {
            None => {
                self.records.insert(rec.key(), rec);
                MergeOutcome::NewKey
            }
            Some(old) if d > old => {
                self.records.insert(rec.key(), rec);
                MergeOutcome::Improved
            }
            Some(old) if d == old => MergeOutcome::Tied,
            Some(_) => MergeOutcome::Worse,
        }
    }

    pub fn merge(&mut self, incoming: impl IntoIterator<Item = CodeRecord>) -> MergeReport {
        let mut report = MergeReport::default();
        for rec in incoming {
            let key = rec.key();
            let outcome = self.insert(rec);
            report.count(outcome);
            if matches!(outcome, MergeOutcome::NewKey | MergeOutcome::Improved) {
                if let Some(note) = self.dominance_note(key) {
                    report.notes.push(note);
                }
            }
        }
        report
    }

    /// A stored record of another type with the same length and Gray image
    /// dimension and a larger distance, if any.
    fn dominance_note(&self, key: Key) -> Option<String> {
        let rec = &self.records[&key];
        let dim = 2 * rec.k1 + rec.k2;
        let d = rec.exact_d()?;
        self.records
            .range((rec.n, 0, 0)..=(rec.n, usize::MAX, usize::MAX))
            .map(|(_, r)| r)
            .filter(|r| r.key() != key && 2 * r.k1 + r.k2 == dim)
            .filter_map(|r| r.exact_d().filter(|&od| od > d).map(|od| (r, od)))
            .max_by_key(|&(_, od)| od)
            .map(|(r, od)| {
                format!(
                    "({},{},{}) with d={d} is dominated by ({},{},{}) with d={od} at binary dimension {dim}",
                    rec.n, rec.k1, rec.k2, r.n, r.k1, r.k2
                )
            })
    }

    pub fn query(&self, q: &Query) -> Vec<&CodeRecord> {
        self.records.values().filter(|r| q.matches(r)).collect()
    }

    /// Canonical text form: one record line per key in key order.
    pub fn export(&self) -> String {
        self.records.values().map(|r| r.to_line() + "\n").collect()
    }

    /// Parses the canonical text form. Duplicate keys and records without an
    /// exact distance are rejected.
    pub fn import(text: &str) -> Result<Self, CatalogError> {
        let mut records = BTreeMap::new();
        for rec in parse_records(text)? {
            if rec.exact_d().is_none() {
                return Err(CatalogError::Validation(format!("stored record {:?} has no exact distance", rec.key())));
            }
            let key = rec.key();
            if records.insert(key, rec).is_some() {
                return Err(CatalogError::Validation(format!("duplicate key {key:?}")));
            }
        }
        Ok(Self { records })
    }

    /// Loads a database file; a missing file is an empty database.
    pub fn load(path: &Path) -> Result<Self, CatalogError> {
        match std::fs::read_to_string(path) {
            Ok(text) => Self::import(&text),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Self::new()),
            Err(e) => Err(e.into()),
        }
    }

    /// Writes through a temporary file in the same directory and renames it
    /// into place, so readers never observe a partial database.
    pub fn save(&self, path: &Path) -> Result<(), CatalogError> {
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let mut tmp = NamedTempFile::new_in(dir)?;
        tmp.write_all(self.export().as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::Outcome;

    fn rec(n: usize, k1: usize, k2: usize, d: Outcome, g: &str) -> CodeRecord {
        CodeRecord {
            n,
            k1,
            k2,
            d,
            construction: if k2 == 0 { Construction::CyclicFree } else { Construction::CyclicNonFree },
            m: None,
            ell: None,
            g_string: g.into(),
            f_strings: vec![],
            gray_linear: false,
            classification: None,
        }
    }

    #[test]
    fn merge_counts_each_outcome() {
        let mut db = CodeDatabase::new();
        let r = db.merge([
            rec(7, 3, 0, Outcome::Exact(4), "a1"),
            rec(7, 3, 0, Outcome::Exact(5), "1"),
            rec(7, 3, 0, Outcome::Exact(5), "11"),
            rec(7, 3, 0, Outcome::Exact(2), "111"),
            rec(7, 3, 0, Outcome::Skipped, "1"),
            rec(7, 3, 0, Outcome::TimedOut, "1"),
            rec(7, 9, 0, Outcome::Exact(2), "1"),
            rec(7, 2, 1, Outcome::Exact(2), "1"),
        ]);
        assert_eq!((r.new_keys, r.improved, r.tied, r.worse, r.deferred, r.rejected), (2, 0, 1, 1, 2, 2));
        assert_eq!(db.get(7, 3, 0).unwrap().g_string, "1");
        assert_eq!(db.len(), 2);
    }

    #[test]
    fn dominance_is_noted() {
        let mut db = CodeDatabase::new();
        db.merge([rec(7, 3, 0, Outcome::Exact(4), "1")]);
        let r = db.merge([rec(7, 2, 2, Outcome::Exact(3), "1")]);
        assert_eq!(r.notes.len(), 1);
        assert!(r.notes[0].contains("dominated"));
    }

    #[test]
    fn export_import_round_trip() {
        let mut db = CodeDatabase::new();
        db.merge([rec(9, 1, 0, Outcome::Exact(6), "1"), rec(7, 3, 0, Outcome::Exact(4), "1011")]);
        let text = db.export();
        let back = CodeDatabase::import(&text).unwrap();
        assert_eq!(back, db);
        assert_eq!(back.export(), text);
        assert!(text.starts_with("7\t"));
    }

    #[test]
    fn import_rejects_duplicates_and_non_exact() {
        let line = rec(7, 3, 0, Outcome::Exact(4), "1").to_line();
        assert!(CodeDatabase::import(&format!("{line}\n{line}\n")).is_err());
        let skipped = rec(7, 3, 0, Outcome::Skipped, "1").to_line();
        assert!(CodeDatabase::import(&skipped).is_err());
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("db.tsv");
        assert!(CodeDatabase::load(&path).unwrap().is_empty());
        let mut db = CodeDatabase::new();
        db.merge([rec(7, 3, 0, Outcome::Exact(4), "1")]);
        db.save(&path).unwrap();
        assert_eq!(CodeDatabase::load(&path).unwrap(), db);

        std::fs::write(&path, "garbage\n").unwrap();
        assert!(matches!(CodeDatabase::load(&path), Err(CatalogError::Parse { line: 1, .. })));
    }

    #[test]
    fn query_filters() {
        let mut db = CodeDatabase::new();
        db.merge([
            rec(7, 3, 0, Outcome::Exact(4), "1"),
            rec(7, 2, 1, Outcome::Exact(4), "1"),
            rec(9, 1, 0, Outcome::Exact(6), "1"),
        ]);
        assert_eq!(db.query(&Query { n: Some(7), ..Query::default() }).len(), 2);
        let free = Query { construction: Some(Construction::CyclicFree), ..Query::default() };
        assert_eq!(db.query(&free).len(), 2);
    }
}
