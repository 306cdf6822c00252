//! Bit-sliced Z4 vectors of length at most 128.
//!
//! A symbol v = 2h + l is stored as bit l in `lo` and bit h in `hi`. Under
//! the Gray map the symbol becomes the pair (h, h xor l), so the Lee weight of
//! a word is `popcount(hi) + popcount(hi ^ lo)`.

/// Longest word the packed representation holds.
pub const MAX_PACKED_LEN: usize = 128;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PackedWord {
    pub lo: u128,
    pub hi: u128,
}

impl PackedWord {
    pub const ZERO: PackedWord = PackedWord { lo: 0, hi: 0 };

    pub fn from_symbols(v: &[u8]) -> Self {
        assert!(v.len() <= MAX_PACKED_LEN, "word of length {} does not fit", v.len());
        let mut w = PackedWord::ZERO;
        for (i, &s) in v.iter().enumerate() {
            w.lo |= ((s & 1) as u128) << i;
            w.hi |= (((s >> 1) & 1) as u128) << i;
        }
        w
    }

    pub fn to_symbols(self, n: usize) -> Vec<u8> {
        (0..n)
            .map(|i| ((self.lo >> i) & 1) as u8 | ((((self.hi >> i) & 1) as u8) << 1))
            .collect()
    }

    /// Z4 addition, coordinatewise.
    #[inline(always)]
    pub fn add(self, other: PackedWord) -> PackedWord {
        PackedWord {
            lo: self.lo ^ other.lo,
            hi: self.hi ^ other.hi ^ (self.lo & other.lo),
        }
    }

    #[inline(always)]
    pub fn is_zero(self) -> bool {
        (self.lo | self.hi) == 0
    }

    #[inline(always)]
    pub fn lee_weight(self) -> u32 {
        self.hi.count_ones() + (self.hi ^ self.lo).count_ones()
    }

    /// Number of coordinates equal to 1 or 3.
    #[inline(always)]
    pub fn units(self) -> u32 {
        self.lo.count_ones()
    }

    /// Number of coordinates equal to 2.
    #[inline(always)]
    pub fn twos(self) -> u32 {
        (self.hi & !self.lo).count_ones()
    }

    /// The Gray image as a 2n-bit vector, coordinate i occupying bits 2i and
    /// 2i + 1. Only valid for n <= 64.
    pub fn gray_bits(self, n: usize) -> u128 {
        assert!(n <= 64);
        let mut out = 0u128;
        for i in 0..n {
            let h = (self.hi >> i) & 1;
            let l = (self.lo >> i) & 1;
            out |= h << (2 * i);
            out |= (h ^ l) << (2 * i + 1);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::gray::lee_weight;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn packed_add_and_weight(a in proptest::collection::vec(0u8..4, 1..128usize)) {
            let b: Vec<u8> = a.iter().rev().copied().collect();
            let sum: Vec<u8> = a.iter().zip(&b).map(|(x, y)| (x + y) % 4).collect();
            let pa = PackedWord::from_symbols(&a);
            let pb = PackedWord::from_symbols(&b);
            prop_assert_eq!(pa.add(pb).to_symbols(a.len()), sum.clone());
            prop_assert_eq!(pa.lee_weight(), lee_weight(&a));
            let units = a.iter().filter(|&&x| x % 2 == 1).count() as u32;
            let twos = a.iter().filter(|&&x| x == 2).count() as u32;
            prop_assert_eq!((pa.units(), pa.twos()), (units, twos));
        }
    }
}
