//! One-generator quasi-cyclic codes and the ASR search.
//!
//! A generator (f_1 s, ..., f_ell s) with every product taken mod x^m - 1
//! spans a code of length m * ell whose rows are the m simultaneous cyclic
//! shifts of the blocks. When s = g divides x^m - 1 and every f_i is coprime
//! to h = (x^m - 1) / g, each block map is injective on <g>, so a nonzero
//! word has ell nonzero blocks and d >= ell * d(<g>).

use std::collections::HashSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{coprime_z4, factor_xn1_z2, DivisorLattice, PolyZ4};
use crate::catalog::{CodeRecord, Construction};
use crate::codes::{standard_form, Z4Code, Z4Matrix, MAX_PACKED_LEN};

use super::cyclic::{CyclicCodeSpec, CyclicFamily};
use super::{measure, SearchError, SearchOptions, SearchSummary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeedKind {
    Free,
    NonFree,
}

/// The block seed of a QC code.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QcSeed {
    /// A monic divisor g of x^m - 1; multipliers must be coprime to
    /// (x^m - 1) / g.
    Free(PolyZ4),
    /// The single generator fh + 2f of a non-free cyclic code; multipliers
    /// are unconstrained.
    NonFree(PolyZ4),
}

impl QcSeed {
    pub fn from_cyclic(s: &CyclicCodeSpec) -> Self {
        if s.is_free() {
            QcSeed::Free(s.f.clone())
        } else {
            QcSeed::NonFree(s.generator_poly())
        }
    }

    pub fn poly(&self) -> &PolyZ4 {
        match self {
            QcSeed::Free(p) | QcSeed::NonFree(p) => p,
        }
    }

    pub fn kind(&self) -> SeedKind {
        match self {
            QcSeed::Free(_) => SeedKind::Free,
            QcSeed::NonFree(_) => SeedKind::NonFree,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QcSpec {
    pub m: usize,
    pub seed: QcSeed,
    pub fs: Vec<PolyZ4>,
}

impl QcSpec {
    pub fn ell(&self) -> usize {
        self.fs.len()
    }

    pub fn n(&self) -> usize {
        self.m * self.ell()
    }

    /// The check polynomial (x^m - 1) / g of a free seed.
    pub fn check_poly(&self) -> Result<Option<PolyZ4>, SearchError> {
        match &self.seed {
            QcSeed::NonFree(_) => Ok(None),
            QcSeed::Free(g) => {
                let (h, rem) = PolyZ4::xn_minus_one(self.m).divrem(g)?;
                if !rem.is_zero() {
                    return Err(SearchError::NotADivisor { poly: g.to_string(), m: self.m });
                }
                Ok(Some(h))
            }
        }
    }
}

/// Builds the code spanned by the m shifts of (f_1 s | ... | f_ell s).
pub fn build_qc(q: &QcSpec) -> Result<Z4Code, SearchError> {
    let m = q.m;
    if m == 0 || q.fs.is_empty() {
        return Err(SearchError::InvalidParams("QC code needs m >= 1 and at least one block".into()));
    }
    if let Some(h) = q.check_poly()? {
        if let Some(i) = q.fs.iter().position(|f| !coprime_z4(f, &h)) {
            return Err(SearchError::Coprimality { index: i + 1, f: q.fs[i].to_string(), h: h.to_string() });
        }
    }
    let blocks: Vec<PolyZ4> = q.fs.iter().map(|f| f.mulmod_xn1(q.seed.poly(), m)).collect();
    let rows: Vec<Vec<u8>> = (0..m)
        .map(|s| blocks.iter().flat_map(|b| b.shift(s).to_vector(m)).collect())
        .collect();
    let code = standard_form(&Z4Matrix::from_rows(q.n(), &rows)?);
    if q.seed.kind() == SeedKind::Free && code.k2() != 0 {
        return Err(SearchError::Internal(format!("free seed produced k2 = {}", code.k2())));
    }
    Ok(code)
}

/// Parameters of an ASR search run.
#[derive(Debug, Clone)]
pub struct AsrParams {
    pub m: usize,
    pub ell: usize,
    pub seed_kind: SeedKind,
    /// Multiplier tuples sampled per seed (before deduplication).
    pub trials: usize,
    pub rng_seed: u64,
    /// Walk every tuple instead of sampling; only for m <= 7.
    pub exhaustive: bool,
}

/// Largest tuple space walked in exhaustive mode.
const EXHAUSTIVE_LIMIT_LOG4: usize = 8;
/// Rejection sampling gives up after this many attempts per requested tuple.
const ATTEMPTS_PER_TRIAL: usize = 64;

impl AsrParams {
    fn check(&self) -> Result<(), SearchError> {
        let bad = |msg: String| Err(SearchError::InvalidParams(msg));
        if self.m % 2 == 0 || self.m > 127 {
            return bad(format!("block length {} must be odd and at most 127", self.m));
        }
        if self.ell < 2 {
            return bad(format!("index {} must be at least 2", self.ell));
        }
        if self.m * self.ell > MAX_PACKED_LEN {
            return bad(format!("length {} exceeds {MAX_PACKED_LEN}", self.m * self.ell));
        }
        if self.exhaustive && (self.m > 7 || self.m * self.ell > EXHAUSTIVE_LIMIT_LOG4) {
            return bad(format!(
                "exhaustive mode needs m <= 7 and m * ell <= {EXHAUSTIVE_LIMIT_LOG4}"
            ));
        }
        Ok(())
    }
}

/// Seeds of the requested kind for block length m: every proper nontrivial
/// monic divisor, or the generator of every non-degenerate non-free cyclic
/// code, in enumeration order.
pub fn asr_seeds(m: usize, kind: SeedKind) -> Result<Vec<QcSeed>, SearchError> {
    Ok(match kind {
        SeedKind::Free => {
            let lattice = DivisorLattice::new(&factor_xn1_z2(m)?)?;
            (1..lattice.len() - 1).map(|mask| QcSeed::Free(lattice.divisor(mask))).collect()
        }
        SeedKind::NonFree => CyclicFamily::new(m)?
            .specs()
            .filter(|s| !s.is_degenerate() && !s.is_free())
            .map(|s| QcSeed::from_cyclic(&s))
            .collect(),
    })
}

fn random_poly(rng: &mut ChaCha8Rng, m: usize) -> PolyZ4 {
    PolyZ4::from_coeffs((0..m).map(|_| rng.gen_range(0..4u8)).collect())
}

/// Multiplier tuples for one seed, in the order they are tried.
fn tuples_for_seed(
    p: &AsrParams,
    seed: &QcSeed,
    seed_index: u64,
    h: Option<&PolyZ4>,
) -> Vec<Vec<PolyZ4>> {
    let admissible = |fs: &[PolyZ4]| match h {
        Some(h) => fs.iter().all(|f| coprime_z4(f, h)),
        None => fs.iter().any(|f| !f.mulmod_xn1(seed.poly(), p.m).is_zero()),
    };
    if p.exhaustive {
        let total = 1u64 << (2 * p.m * p.ell);
        return (0..total)
            .map(|idx| {
                (0..p.ell)
                    .map(|i| {
                        let block = idx >> (2 * p.m * i);
                        PolyZ4::from_coeffs((0..p.m).map(|j| (block >> (2 * j) & 3) as u8).collect())
                    })
                    .collect::<Vec<_>>()
            })
            .filter(|fs| admissible(fs))
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.rng_seed);
    rng.set_stream(seed_index);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for _ in 0..p.trials.saturating_mul(ATTEMPTS_PER_TRIAL) {
        if out.len() == p.trials {
            break;
        }
        let fs: Vec<PolyZ4> = (0..p.ell).map(|_| random_poly(&mut rng, p.m)).collect();
        if admissible(&fs) && seen.insert(fs.clone()) {
            out.push(fs);
        }
    }
    out
}

fn seed_records(p: &AsrParams, seed: &QcSeed, seed_index: u64, opts: &SearchOptions) -> Result<Vec<CodeRecord>, SearchError> {
    let probe = QcSpec { m: p.m, seed: seed.clone(), fs: vec![PolyZ4::one()] };
    let h = probe.check_poly()?;
    let construction = match seed.kind() {
        SeedKind::Free => Construction::QcFree,
        SeedKind::NonFree => Construction::QcNonFree,
    };
    let mut out = Vec::new();
    for fs in tuples_for_seed(p, seed, seed_index, h.as_ref()) {
        let spec = QcSpec { m: p.m, seed: seed.clone(), fs };
        let code = build_qc(&spec)?;
        if code.is_zero() {
            continue;
        }
        let f_strings = spec.fs.iter().map(|f| f.to_string()).collect();
        out.push(measure(&code, construction, Some((p.m, p.ell)), seed.poly().to_string(), f_strings, &opts.policy));
    }
    Ok(out)
}

/// Runs the ASR search. Seeds are processed in parallel, each with its own
/// RNG stream derived from `(rng_seed, seed index)`; records reach `sink`
/// in seed order and then in sampling order, whatever the worker count.
pub fn asr_search<E>(
    p: &AsrParams,
    opts: &SearchOptions,
    mut sink: impl FnMut(CodeRecord) -> Result<(), E>,
) -> Result<SearchSummary, SearchError>
where
    SearchError: From<E>,
{
    p.check()?;
    let seeds = asr_seeds(p.m, p.seed_kind)?;
    let mut summary = SearchSummary::default();
    let per_seed: Vec<(Result<Vec<CodeRecord>, SearchError>, std::time::Duration)> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, seed)| {
            let start = Instant::now();
            (seed_records(p, seed, i as u64, opts), start.elapsed())
        })
        .collect();
    for (i, (records, elapsed)) in per_seed.into_iter().enumerate() {
        let records = records?;
        let exact = records.iter().filter(|r| r.exact_d().is_some()).count();
        if opts.progress {
            eprintln!(
                "qc m={} ell={} seed={} ({}) records={} exact={exact} elapsed={elapsed:.2?}",
                p.m,
                p.ell,
                i,
                seeds[i].poly(),
                records.len()
            );
        }
        summary.emitted += records.len();
        summary.exact += exact;
        for r in records {
            sink(r)?;
        }
    }
    Ok(summary)
}
