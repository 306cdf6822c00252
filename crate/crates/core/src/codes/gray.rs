//! The Gray map Z4 -> Z2^2 and the Lee metric.

use super::Z4Code;

/// 0 -> 00, 1 -> 01, 2 -> 11, 3 -> 10.
const GRAY: [[u8; 2]; 4] = [[0, 0], [0, 1], [1, 1], [1, 0]];
const LEE: [u32; 4] = [0, 1, 2, 1];

/// Binary image of a Z4 vector, of length exactly twice the input.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrayWord(Vec<u8>);

impl GrayWord {
    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn hamming_weight(&self) -> u32 {
        self.0.iter().map(|&b| b as u32).sum()
    }

    pub fn hamming_distance(&self, other: &GrayWord) -> u32 {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count() as u32
    }
}

pub fn gray_map(v: &[u8]) -> GrayWord {
    GrayWord(v.iter().flat_map(|&s| GRAY[(s % 4) as usize]).collect())
}

pub fn lee_weight(v: &[u8]) -> u32 {
    v.iter().map(|&s| LEE[(s % 4) as usize]).sum()
}

pub fn lee_distance(u: &[u8], v: &[u8]) -> u32 {
    u.iter().zip(v).map(|(&a, &b)| LEE[((a + 4 - b % 4) % 4) as usize]).sum()
}

/// Whether the Gray image of the code is a binary linear code.
///
/// phi(C) is linear iff 2(u * v) lies in C for all codewords u, v, where *
/// is the componentwise product. The map (u, v) -> 2(u * v) only depends on
/// u and v mod 2 and is bilinear there, so it suffices to check pairs of
/// generator rows; pairs u = v always pass.
pub fn is_gray_linear(code: &Z4Code) -> bool {
    let gen = code.generator();
    for i in 0..gen.rows() {
        for j in (i + 1)..gen.rows() {
            let w: Vec<u8> = gen
                .row(i)
                .iter()
                .zip(gen.row(j))
                .map(|(&a, &b)| (2 * a * b) % 4)
                .collect();
            if !code.contains_standard(&w) {
                return false;
            }
        }
    }
    true
}
