//! Exhaustive enumeration of cyclic codes over Z4 of odd length.
//!
//! Every ideal of Z4[x]/(x^n - 1) is <fh, 2fg> = <fh + 2f> for a unique
//! split fgh = x^n - 1 into monic divisors. Assigning each lifted
//! irreducible factor to one of f, g or h gives all 3^r ideals; the 2^r
//! with h = 1 are the free ones.

use std::time::Instant;

use rayon::prelude::*;

use crate::algebra::{factor_xn1_z2, lift_factors, AlgebraError, PolyZ4};
use crate::catalog::{CodeRecord, Construction};
use crate::codes::{standard_form, Z4Code, Z4Matrix};

use super::{measure, SearchError, SearchOptions, SearchSummary};

/// Which of f, g, h a lifted factor belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    F,
    G,
    H,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCodeSpec {
    pub n: usize,
    pub roles: Vec<Role>,
    pub f: PolyZ4,
    pub g: PolyZ4,
    pub h: PolyZ4,
    /// Single generator fh + 2f.
    pub p: PolyZ4,
}

impl CyclicCodeSpec {
    pub fn k1(&self) -> usize {
        self.g.degree().unwrap_or(0)
    }

    pub fn k2(&self) -> usize {
        self.h.degree().unwrap_or(0)
    }

    pub fn is_free(&self) -> bool {
        self.h.is_one()
    }

    /// The zero code (all factors in f) or the whole space (all in g).
    pub fn is_degenerate(&self) -> bool {
        self.roles.iter().all(|&r| r == Role::F) || self.roles.iter().all(|&r| r == Role::G)
    }

    /// Generator polynomial recorded as provenance: the monic divisor f for
    /// free codes, fh + 2f reduced mod x^n - 1 otherwise. Either generates
    /// the ideal on its own.
    pub fn generator_poly(&self) -> PolyZ4 {
        if self.is_free() {
            self.f.clone()
        } else {
            self.p.reduce_xn1(self.n)
        }
    }
}

/// Mixed-radix counter over role assignments, digit 0 fastest. Tracks the
/// number of H roles so counting free assignments is O(1) per step.
#[derive(Debug, Clone)]
pub struct RoleOdometer {
    roles: Vec<Role>,
    h_count: usize,
    started: bool,
    done: bool,
}

impl RoleOdometer {
    pub fn new(r: usize) -> Self {
        Self { roles: vec![Role::F; r], h_count: 0, started: false, done: false }
    }

    /// Advances to the next assignment; `None` after the last one and on
    /// every later call.
    pub fn advance(&mut self) -> Option<&[Role]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.roles);
        }
        for slot in self.roles.iter_mut() {
            match *slot {
                Role::F => {
                    *slot = Role::G;
                    return Some(&self.roles);
                }
                Role::G => {
                    *slot = Role::H;
                    self.h_count += 1;
                    return Some(&self.roles);
                }
                Role::H => {
                    *slot = Role::F;
                    self.h_count -= 1;
                }
            }
        }
        self.done = true;
        None
    }

    pub fn h_count(&self) -> usize {
        self.h_count
    }
}

/// The lifted factors of x^n - 1 for one odd length.
#[derive(Debug, Clone)]
pub struct CyclicFamily {
    n: usize,
    lifts: Vec<PolyZ4>,
}

impl CyclicFamily {
    pub fn new(n: usize) -> Result<Self, AlgebraError> {
        let lifts = lift_factors(&factor_xn1_z2(n)?)?;
        Ok(Self { n, lifts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.lifts.len()
    }

    pub fn lifts(&self) -> &[PolyZ4] {
        &self.lifts
    }

    pub fn spec(&self, roles: &[Role]) -> CyclicCodeSpec {
        assert_eq!(roles.len(), self.lifts.len(), "one role per factor");
        let mut parts = [PolyZ4::one(), PolyZ4::one(), PolyZ4::one()];
        for (lift, &role) in self.lifts.iter().zip(roles) {
            let slot = &mut parts[role as usize];
            *slot = &*slot * lift;
        }
        let [f, g, h] = parts;
        let p = &(&f * &h) + &f.scale(2);
        CyclicCodeSpec { n: self.n, roles: roles.to_vec(), f, g, h, p }
    }

    /// All 3^r specs in odometer order.
    pub fn specs(&self) -> impl Iterator<Item = CyclicCodeSpec> + '_ {
        let mut odo = RoleOdometer::new(self.r());
        std::iter::from_fn(move || odo.advance().map(|roles| self.spec(roles)))
    }

    /// (number of specs, number of free specs), counted by walking the
    /// same odometer that drives `specs`.
    pub fn count_specs(&self) -> (u64, u64) {
        let mut odo = RoleOdometer::new(self.r());
        let (mut total, mut free) = (0u64, 0u64);
        while odo.advance().is_some() {
            total += 1;
            free += u64::from(odo.h_count() == 0);
        }
        (total, free)
    }
}

/// Streams every cyclic code spec of length n, degenerate ones included.
pub fn enumerate_cyclic(n: usize) -> Result<impl Iterator<Item = CyclicCodeSpec>, AlgebraError> {
    let family = CyclicFamily::new(n)?;
    let mut odo = RoleOdometer::new(family.r());
    Ok(std::iter::from_fn(move || odo.advance().map(|roles| family.spec(roles))))
}

/// Builds the code from the two-generator presentation {x^i fh} for
/// i < deg g and {2 x^j fg} for j < deg h.
pub fn cyclic_code_from_spec(s: &CyclicCodeSpec) -> Result<Z4Code, SearchError> {
    if s.roles.iter().all(|&r| r == Role::F) {
        return Err(SearchError::ZeroCode);
    }
    let fh = &s.f * &s.h;
    let fg2 = (&s.f * &s.g).scale(2);
    let rows: Vec<Vec<u8>> = (0..s.k1())
        .map(|i| fh.shift(i).to_vector(s.n))
        .chain((0..s.k2()).map(|j| fg2.shift(j).to_vector(s.n)))
        .collect();
    let code = standard_form(&Z4Matrix::from_rows(s.n, &rows)?);
    if (code.k1(), code.k2()) != (s.k1(), s.k2()) {
        return Err(SearchError::Internal(format!(
            "spec of type ({}, {}) built a code of type ({}, {})",
            s.k1(),
            s.k2(),
            code.k1(),
            code.k2()
        )));
    }
    Ok(code)
}

/// The code spanned by the n cyclic shifts of a single generator.
pub fn cyclic_code_from_generator(n: usize, p: &PolyZ4) -> Result<Z4Code, SearchError> {
    let base = p.reduce_xn1(n);
    let rows: Vec<Vec<u8>> = (0..n).map(|i| base.shift(i).reduce_xn1(n).to_vector(n)).collect();
    Ok(standard_form(&Z4Matrix::from_rows(n, &rows)?))
}

const BATCH: usize = 256;

/// Measures every non-degenerate cyclic code for each length and passes
/// records to `sink` in enumeration order.
pub fn cyclic_search<E>(
    lengths: &[usize],
    free_only: bool,
    opts: &SearchOptions,
    mut sink: impl FnMut(CodeRecord) -> Result<(), E>,
) -> Result<SearchSummary, SearchError>
where
    SearchError: From<E>,
{
    let mut summary = SearchSummary::default();
    for &n in lengths {
        let start = Instant::now();
        let family = CyclicFamily::new(n)?;
        let mut specs = family.specs().filter(|s| !s.is_degenerate() && (!free_only || s.is_free()));
        let mut emitted = 0usize;
        let mut exact = 0usize;
        loop {
            let batch: Vec<CyclicCodeSpec> = specs.by_ref().take(BATCH).collect();
            if batch.is_empty() {
                break;
            }
            let records: Vec<Result<CodeRecord, SearchError>> =
                batch.par_iter().map(|s| cyclic_record(s, opts)).collect();
            for rec in records {
                let rec = rec?;
                exact += usize::from(rec.exact_d().is_some());
                emitted += 1;
                sink(rec)?;
            }
        }
        summary.emitted += emitted;
        summary.exact += exact;
        if opts.progress {
            eprintln!(
                "cyclic n={n} r={} records={emitted} exact={exact} elapsed={:.2?}",
                family.r(),
                start.elapsed()
            );
        }
    }
    Ok(summary)
}

fn cyclic_record(s: &CyclicCodeSpec, opts: &SearchOptions) -> Result<CodeRecord, SearchError> {
    let code = cyclic_code_from_spec(s)?;
    let construction = if s.is_free() { Construction::CyclicFree } else { Construction::CyclicNonFree };
    Ok(measure(&code, construction, None, s.generator_poly().to_string(), Vec::new(), &opts.policy))
}
