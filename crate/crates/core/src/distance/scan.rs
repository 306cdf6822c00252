//! Parallel exhaustive enumeration of a code's words in bit-sliced form.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::codes::{message_digits, PackedWord, Z4Code, MAX_PACKED_LEN};

use super::DistanceError;

/// Generator rows of a code packed for enumeration.
pub(crate) struct PackedGenerator {
    n: usize,
    rows: Vec<PackedWord>,
    radices: Vec<u8>,
}

impl PackedGenerator {
    pub(crate) fn new(code: &Z4Code) -> Result<Self, DistanceError> {
        if code.n() > MAX_PACKED_LEN {
            return Err(DistanceError::TooLong(code.n()));
        }
        Ok(Self {
            n: code.n(),
            rows: code.generator().iter_rows().map(PackedWord::from_symbols).collect(),
            radices: code.message_radices(),
        })
    }

    pub(crate) fn n(&self) -> usize {
        self.n
    }

    fn encode(&self, digits: &[u8]) -> PackedWord {
        let mut w = PackedWord::ZERO;
        for (row, &d) in self.rows.iter().zip(digits) {
            for _ in 0..d {
                w = w.add(*row);
            }
        }
        w
    }
}

/// Accumulates per-word statistics. Partial results from disjoint message
/// ranges are combined with `merge`, which must be commutative and
/// associative so the outcome is independent of scheduling.
pub(crate) trait Visitor: Clone + Send + Sync {
    /// Returns false once no further word can change the result.
    fn visit(&mut self, w: PackedWord) -> bool;
    fn merge(self, other: Self) -> Self;
}

#[derive(Debug)]
pub(crate) struct TimedOut;

const CHUNK_LOG2: u32 = 14;
const MAX_CHUNKS: u64 = 1 << 13;
const CLOCK_MASK: u64 = (1 << 12) - 1;

/// Visits every word of the code once. Message ranges are scanned in
/// parallel; each chunk starts from its encoded first message and then adds
/// one generator row per changed message digit.
pub(crate) fn scan<V: Visitor>(
    gen: &PackedGenerator,
    proto: V,
    deadline: Option<Instant>,
) -> Result<V, TimedOut> {
    let k = gen.rows.len() as u32;
    let total_log2: u32 = gen.radices.iter().map(|&r| if r == 4 { 2 } else { 1 }).sum();
    debug_assert!(total_log2 < 64 && k > 0);
    let total = 1u64 << total_log2;
    let chunks = (total >> CHUNK_LOG2).clamp(1, MAX_CHUNKS);
    let stop = AtomicBool::new(false);
    let timed_out = AtomicBool::new(false);

    let result = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = total / chunks * c + (total % chunks).min(c);
            let end = start + total / chunks + u64::from(c < total % chunks);
            let mut v = proto.clone();
            if stop.load(Ordering::Relaxed) {
                return v;
            }
            let mut digits = message_digits(start, &gen.radices);
            let mut w = gen.encode(&digits);
            for pos in start..end {
                if !v.visit(w) {
                    stop.store(true, Ordering::Relaxed);
                    break;
                }
                if pos & CLOCK_MASK == 0 {
                    if stop.load(Ordering::Relaxed) {
                        break;
                    }
                    if deadline.is_some_and(|d| Instant::now() >= d) {
                        timed_out.store(true, Ordering::Relaxed);
                        stop.store(true, Ordering::Relaxed);
                        break;
                    }
                }
                for (i, &radix) in gen.radices.iter().enumerate() {
                    w = w.add(gen.rows[i]);
                    digits[i] += 1;
                    if digits[i] < radix {
                        break;
                    }
                    digits[i] = 0;
                }
            }
            v
        })
        .reduce(|| proto.clone(), V::merge);

    if timed_out.load(Ordering::Relaxed) {
        Err(TimedOut)
    } else {
        Ok(result)
    }
}

/// Minimum Lee weight over nonzero words.
#[derive(Clone, Debug)]
pub(crate) struct MinLee {
    pub best: u32,
}

impl Visitor for MinLee {
    #[inline(always)]
    fn visit(&mut self, w: PackedWord) -> bool {
        if !w.is_zero() {
            self.best = self.best.min(w.lee_weight());
        }
        self.best > 1
    }

    fn merge(self, other: Self) -> Self {
        MinLee { best: self.best.min(other.best) }
    }
}

/// Census of (units, twos) per word, indexed `units * (n + 1) + twos`.
#[derive(Clone, Debug)]
pub(crate) struct Census {
    pub n: usize,
    pub counts: Vec<u64>,
}

impl Census {
    pub(crate) fn new(n: usize) -> Self {
        Census { n, counts: vec![0; (n + 1) * (n + 1)] }
    }
}

impl Visitor for Census {
    #[inline(always)]
    fn visit(&mut self, w: PackedWord) -> bool {
        self.counts[w.units() as usize * (self.n + 1) + w.twos() as usize] += 1;
        true
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }
}
