//! Linear codes over Z4: generator matrices, standard form, duals, the Gray
//! map and Lee weights.

mod code;
mod gray;
mod matrix;
mod packed;

pub use code::{message_digits, standard_form, Codewords, Z4Code};
pub use gray::{gray_map, is_gray_linear, lee_distance, lee_weight, GrayWord};
pub use matrix::Z4Matrix;
pub use packed::{PackedWord, MAX_PACKED_LEN};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("malformed matrix: {0}")]
    Malformed(String),
    #[error("row {row} has length {len}, expected {cols}")]
    NotRectangular { row: usize, len: usize, cols: usize },
    #[error("code has 2^{size_log2} words, above the enumeration budget of {budget}")]
    BudgetExceeded { size_log2: u32, budget: u64 },
    #[error("dual construction failed verification: {0}")]
    DualVerification(String),
}
