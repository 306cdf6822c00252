//! Code records, best-known-code tables, classification and the persistent
//! code database.

mod bklc;
mod db;
mod record;

use thiserror::Error;

pub use bklc::{classify, classify_against, load_bklc, BklcEntry, BklcTable, BKLC_HEADER};
pub use db::{CodeDatabase, MergeOutcome, MergeReport, Query};
pub use record::{parse_records, Classification, CodeRecord, Construction};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid data: {0}")]
    Validation(String),
    #[error("no table entry for binary length {n} and dimension {k}")]
    MissingBklc { n: usize, k: usize },
    #[error("record {0:?} has no exact distance")]
    NotExact((usize, usize, usize)),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CatalogError {
    pub fn is_io(&self) -> bool {
        matches!(self, CatalogError::Io(_))
    }
}
