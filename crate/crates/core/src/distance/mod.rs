//! Minimum Lee distance of Z4-linear codes.
//!
//! Two exact engines are provided. The direct engine enumerates the code
//! itself; the dual engine enumerates the dual code and recovers the code's
//! symmetrized weight enumerator through the MacWilliams identity. `min_lee`
//! picks whichever side is smaller and applies the length and complexity
//! cutoffs of a [`DistancePolicy`].

mod scan;
mod swe;

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

pub use swe::{macwilliams_swe, swe_by_enumeration, Swe, SymmetrizedWeightEnumerator};

use crate::codes::{CodeError, Z4Code, MAX_PACKED_LEN};
use scan::{scan, MinLee, PackedGenerator};

/// Default cap on the number of words a single engine call may enumerate.
pub const DEFAULT_BUDGET: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistanceError {
    #[error("the zero code has no minimum distance")]
    ZeroCode,
    #[error("enumeration side has 2^{size_log2} words, above the budget of {budget}")]
    BudgetExceeded { size_log2: u32, budget: u64 },
    #[error("length {0} exceeds the packed enumeration limit of 128")]
    TooLong(usize),
    #[error("time limit reached")]
    TimedOut,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Direct,
    DualMacWilliams,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::DualMacWilliams => "dual-macwilliams",
        })
    }
}

/// How a distance computation ended. Only `Exact` carries a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Exact(u32),
    TimedOut,
    Skipped,
}

impl Outcome {
    pub fn exact(self) -> Option<u32> {
        match self {
            Outcome::Exact(d) => Some(d),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceResult {
    pub outcome: Outcome,
    pub method: Method,
    pub elapsed: Duration,
}

impl DistanceResult {
    pub fn d(&self) -> Option<u32> {
        self.outcome.exact()
    }
}

/// Limits for a single engine call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    pub budget: u64,
    pub time_limit: Option<Duration>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET, time_limit: None }
    }
}

/// Cutoffs deciding whether and how hard to compute a distance.
///
/// Codes of length at most `length_cutoff` are computed without a time
/// limit. Longer codes are attempted under `time_limit` when the smaller of
/// log2 |C| and log2 |C^perp| is at most `complexity_cutoff`, and skipped
/// otherwise. Any enumeration larger than `budget` words is skipped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistancePolicy {
    pub length_cutoff: usize,
    pub complexity_cutoff: u32,
    pub time_limit: Duration,
    pub budget: u64,
}

impl Default for DistancePolicy {
    fn default() -> Self {
        Self {
            length_cutoff: 61,
            complexity_cutoff: 60,
            time_limit: Duration::from_secs(60),
            budget: DEFAULT_BUDGET,
        }
    }
}

fn deadline(start: Instant, opts: &EngineOptions) -> Option<Instant> {
    opts.time_limit.map(|t| start + t)
}

fn check_budget(size_log2: u32, budget: u64) -> Result<(), DistanceError> {
    if size_log2 >= 64 || (1u64 << size_log2) > budget {
        Err(DistanceError::BudgetExceeded { size_log2, budget })
    } else {
        Ok(())
    }
}

/// Minimum Lee weight by enumerating every codeword.
pub fn min_lee_direct(code: &Z4Code, opts: &EngineOptions) -> Result<DistanceResult, DistanceError> {
    let start = Instant::now();
    if code.is_zero() {
        return Err(DistanceError::ZeroCode);
    }
    check_budget(code.size_log2(), opts.budget)?;
    let gen = PackedGenerator::new(code)?;
    let outcome = match scan(&gen, MinLee { best: u32::MAX }, deadline(start, opts)) {
        Ok(m) => Outcome::Exact(m.best),
        Err(_) => Outcome::TimedOut,
    };
    Ok(DistanceResult { outcome, method: Method::Direct, elapsed: start.elapsed() })
}

/// Minimum Lee weight from the dual code's enumerator and the MacWilliams
/// identity.
pub fn min_lee_via_dual(code: &Z4Code, opts: &EngineOptions) -> Result<DistanceResult, DistanceError> {
    let start = Instant::now();
    if code.is_zero() {
        return Err(DistanceError::ZeroCode);
    }
    if code.n() > MAX_PACKED_LEN {
        return Err(DistanceError::TooLong(code.n()));
    }
    check_budget(code.dual_size_log2(), opts.budget)?;
    let dual = code.dual()?;
    let done = |outcome| DistanceResult { outcome, method: Method::DualMacWilliams, elapsed: start.elapsed() };
    let dual_swe = match swe::swe_with_deadline(&dual, opts.budget, deadline(start, opts)) {
        Ok(s) => s,
        Err(DistanceError::TimedOut) => return Ok(done(Outcome::TimedOut)),
        Err(e) => return Err(e),
    };
    let dual_size = BigUint::one() << dual.size_log2();
    let code_swe = macwilliams_swe(&dual_swe, &dual_size)?;
    if code_swe.total() != BigUint::one() << code.size_log2() {
        return Err(DistanceError::Inconsistent("transformed enumerator has the wrong size".into()));
    }
    let d = code_swe
        .min_lee_weight()
        .ok_or_else(|| DistanceError::Inconsistent("nonzero code with no nonzero words".into()))?;
    Ok(done(Outcome::Exact(d)))
}

/// The engine whose enumeration side is smaller (direct on ties), together
/// with log2 of that side.
pub fn preferred_engine(code: &Z4Code) -> (Method, u32) {
    let (direct, dual) = (code.size_log2(), code.dual_size_log2());
    if direct <= dual {
        (Method::Direct, direct)
    } else {
        (Method::DualMacWilliams, dual)
    }
}

/// Runs one specific engine.
pub fn min_lee_with(code: &Z4Code, method: Method, opts: &EngineOptions) -> Result<DistanceResult, DistanceError> {
    match method {
        Method::Direct => min_lee_direct(code, opts),
        Method::DualMacWilliams => min_lee_via_dual(code, opts),
    }
}

/// Minimum Lee distance under the cutoff policy. Codes that are out of reach
/// come back as `Skipped`, never as an error.
pub fn min_lee(code: &Z4Code, policy: &DistancePolicy) -> DistanceResult {
    let start = Instant::now();
    let (method, side) = preferred_engine(code);
    let skipped = DistanceResult { outcome: Outcome::Skipped, method, elapsed: start.elapsed() };
    if code.is_zero() || code.n() > MAX_PACKED_LEN {
        return skipped;
    }
    let time_limit = if code.n() <= policy.length_cutoff {
        None
    } else if side <= policy.complexity_cutoff {
        Some(policy.time_limit)
    } else {
        return skipped;
    };
    let opts = EngineOptions { budget: policy.budget, time_limit };
    match min_lee_with(code, method, &opts) {
        Ok(r) => r,
        Err(DistanceError::BudgetExceeded { .. }) => skipped,
        Err(e) => panic!("distance engine failed on a valid code: {e}"),
    }
}
