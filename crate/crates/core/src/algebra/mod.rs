//! Polynomial arithmetic over Z2 and Z4 and the structure of x^n - 1.

mod factor;
mod lift;
mod poly;

pub use factor::{
    cyclotomic_cosets, factor_xn1_z2, is_irreducible_z2, order_of_two, FactorizationZ2, MAX_LENGTH,
};
pub use lift::{coprime_z4, divisor_lattice, hensel_lift, lift_factors, DivisorLattice};
pub use poly::{Poly, PolyZ2, PolyZ4};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("malformed coefficient string: {0}")]
    Malformed(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("divisor {0} is not monic")]
    NonMonicDivisor(String),
    #[error("length {0} is not an odd integer in 1..=127")]
    UnsupportedLength(usize),
    #[error("{0} is not a monic divisor of x^{1} - 1 over Z2")]
    NotADivisor(String, usize),
    #[error("Hensel lift of {0} does not divide x^{1} - 1 over Z4")]
    LiftFailed(String, usize),
}
