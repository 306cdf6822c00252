//! Hensel lifting of binary divisors of x^n - 1 to Z4, coprimality over Z4,
//! and the lattice of monic Z4 divisors of x^n - 1.

use super::factor::FactorizationZ2;
use super::poly::{PolyZ2, PolyZ4};
use super::AlgebraError;

/// Lifts a monic binary divisor of x^n - 1 (n odd) to the unique monic
/// divisor of x^n - 1 over Z4 with the same reduction mod 2.
///
/// Graeffe's root-squaring step: with f2 = e(x) + o(x) split into even and
/// odd powers, the lift f satisfies f(x^2) = +-(e(x)^2 - o(x)^2) over Z4.
pub fn hensel_lift(f2: &PolyZ2, n: usize) -> Result<PolyZ4, AlgebraError> {
    if n == 0 || n % 2 == 0 {
        return Err(AlgebraError::UnsupportedLength(n));
    }
    if !f2.is_monic() {
        return Err(AlgebraError::NotADivisor(f2.to_string(), n));
    }
    let (_, r2) = PolyZ2::xn_minus_one(n).divrem(f2)?;
    if !r2.is_zero() {
        return Err(AlgebraError::NotADivisor(f2.to_string(), n));
    }

    let lifted = f2.to_z4();
    let split = |parity: usize| {
        PolyZ4::from_coeffs(
            lifted
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, &c)| if i % 2 == parity { c } else { 0 })
                .collect(),
        )
    };
    let even = split(0);
    let odd = split(1);
    let squared = &(&even * &even) - &(&odd * &odd);
    // squared only has even powers; compress x^2 -> x
    let mut f = PolyZ4::from_coeffs(squared.coeffs().iter().step_by(2).copied().collect());
    if f.leading_coeff() == 3 {
        f = -&f;
    }
    debug_assert!(f.is_monic());

    let (_, r4) = PolyZ4::xn_minus_one(n).divrem(&f)?;
    if !r4.is_zero() || f.reduce_mod2() != *f2 {
        return Err(AlgebraError::LiftFailed(f2.to_string(), n));
    }
    Ok(f)
}

/// Coprimality in Z4[x]: holds exactly when the reductions mod 2 are coprime.
pub fn coprime_z4(a: &PolyZ4, b: &PolyZ4) -> bool {
    a.reduce_mod2().gcd(&b.reduce_mod2()).is_one()
}

/// Hensel lifts of all factors in a binary factorization, in factor order.
pub fn lift_factors(fz: &FactorizationZ2) -> Result<Vec<PolyZ4>, AlgebraError> {
    fz.factors().iter().map(|f| hensel_lift(f, fz.n())).collect()
}

/// All 2^r monic divisors of x^n - 1 over Z4.
///
/// Divisor number `mask` is the product of the lifted factors whose bit is
/// set in `mask`, so the order follows the canonical factor order.
#[derive(Clone, Debug)]
pub struct DivisorLattice {
    lifts: Vec<PolyZ4>,
    next: u64,
}

impl DivisorLattice {
    pub fn new(fz: &FactorizationZ2) -> Result<Self, AlgebraError> {
        Ok(Self { lifts: lift_factors(fz)?, next: 0 })
    }

    pub fn len(&self) -> u64 {
        1u64 << self.lifts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn divisor(&self, mask: u64) -> PolyZ4 {
        self.lifts
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(PolyZ4::one(), |acc, (_, p)| &acc * p)
    }
}

impl Iterator for DivisorLattice {
    type Item = PolyZ4;

    fn next(&mut self) -> Option<PolyZ4> {
        if self.next >= self.len() {
            return None;
        }
        let d = self.divisor(self.next);
        self.next += 1;
        Some(d)
    }
}

pub fn divisor_lattice(fz: &FactorizationZ2) -> Result<DivisorLattice, AlgebraError> {
    DivisorLattice::new(fz)
}
