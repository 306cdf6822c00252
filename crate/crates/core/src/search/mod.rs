//! Discovery drivers: exhaustive cyclic enumeration and the ASR search for
//! one-generator quasi-cyclic codes.

mod cyclic;
mod qc;

use thiserror::Error;

pub use cyclic::{
    cyclic_code_from_generator, cyclic_code_from_spec, cyclic_search, enumerate_cyclic, CyclicCodeSpec,
    CyclicFamily, Role, RoleOdometer,
};
pub use qc::{asr_search, asr_seeds, build_qc, AsrParams, QcSeed, QcSpec, SeedKind};

use crate::algebra::{AlgebraError, PolyZ4};
use crate::catalog::{CodeRecord, Construction};
use crate::codes::{is_gray_linear, CodeError, Z4Code};
use crate::distance::{min_lee, DistancePolicy};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("the specification describes the zero code")]
    ZeroCode,
    #[error("seed {poly} does not divide x^{m} - 1")]
    NotADivisor { poly: String, m: usize },
    #[error("multiplier {index} ({f}) is not coprime to the check polynomial {h}")]
    Coprimality { index: usize, f: String, h: String },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("record sink failed: {0}")]
    Sink(#[from] std::io::Error),
}

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    pub policy: DistancePolicy,
    /// Print one summary line per length or seed to standard error.
    pub progress: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchSummary {
    pub emitted: usize,
    pub exact: usize,
}

/// Computes distance and Gray linearity and packages a record.
pub(crate) fn measure(
    code: &Z4Code,
    construction: Construction,
    qc: Option<(usize, usize)>,
    g_string: String,
    f_strings: Vec<String>,
    policy: &DistancePolicy,
) -> CodeRecord {
    CodeRecord {
        n: code.n(),
        k1: code.k1(),
        k2: code.k2(),
        d: min_lee(code, policy).outcome,
        construction,
        m: qc.map(|q| q.0),
        ell: qc.map(|q| q.1),
        g_string,
        f_strings,
        gray_linear: is_gray_linear(code),
        classification: None,
    }
}

/// Rebuilds a code from the provenance strings of a record.
pub fn code_from_record(rec: &CodeRecord) -> Result<Z4Code, SearchError> {
    let g = PolyZ4::parse(&rec.g_string)?;
    let code = match rec.construction {
        Construction::CyclicFree | Construction::CyclicNonFree => cyclic_code_from_generator(rec.n, &g)?,
        Construction::QcFree | Construction::QcNonFree => {
            let (Some(m), Some(ell)) = (rec.m, rec.ell) else {
                return Err(SearchError::InvalidParams("QC record without m and ell".into()));
            };
            let fs = rec.f_strings.iter().map(|s| PolyZ4::parse(s)).collect::<Result<Vec<_>, _>>()?;
            if fs.len() != ell {
                return Err(SearchError::InvalidParams(format!("{} multipliers for index {ell}", fs.len())));
            }
            let seed = if rec.construction == Construction::QcFree { QcSeed::Free(g) } else { QcSeed::NonFree(g) };
            build_qc(&QcSpec { m, seed, fs })?
        }
    };
    if code.n() != rec.n {
        return Err(SearchError::InvalidParams(format!("provenance builds length {}, record says {}", code.n(), rec.n)));
    }
    Ok(code)
}
