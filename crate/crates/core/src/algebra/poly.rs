//! Dense polynomials over Z2 and Z4.
//!
//! Coefficients are stored in ascending order of powers, so `coeffs()[i]` is
//! the coefficient of x^i. The representation is canonical: there are never
//! trailing zero coefficients, and the zero polynomial is the empty vector.
//! The textual form used throughout the code tables is the same ascending
//! coefficient string, e.g. `"323001"` is `x^5 + 3x^2 + 2x + 3`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::AlgebraError;

/// A polynomial with coefficients in Z/MZ. Only `M = 2` and `M = 4` are used.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<const M: u8> {
    coeffs: Vec<u8>,
}

pub type PolyZ2 = Poly<2>;
pub type PolyZ4 = Poly<4>;

impl<const M: u8> Poly<M> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    pub fn constant(c: u8) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial x^k.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        Self { coeffs }
    }

    /// x^n - 1.
    pub fn xn_minus_one(n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = M - 1;
        coeffs[n] = 1;
        Self::from_coeffs(coeffs)
    }

    /// Builds a polynomial from raw coefficients, reducing them mod M and
    /// trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<u8>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= M;
        }
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading_coeff(&self) -> u8 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: u8) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&a| a * (c % M)).collect())
    }

    /// Multiplies by x^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Division with remainder by a monic divisor: returns `(q, r)` with
    /// `self = q * divisor + r` and `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self), AlgebraError> {
        if divisor.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if !divisor.is_monic() {
            return Err(AlgebraError::NonMonicDivisor(divisor.to_string()));
        }
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![0u8; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = (rem[k] + M * M - (c * dc) % M) % M;
            }
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Remainder modulo x^n - 1: folds exponent i onto i mod n.
    pub fn reduce_xn1(&self, n: usize) -> Self {
        if self.coeffs.len() <= n {
            return self.clone();
        }
        let mut out = vec![0u8; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i % n] = (out[i % n] + c) % M;
        }
        Self::from_coeffs(out)
    }

    /// Product in the quotient ring Z_M[x] / (x^n - 1).
    pub fn mulmod_xn1(&self, other: &Self, n: usize) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0u32; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[(i + j) % n] += (a * b) as u32;
            }
        }
        Self::from_coeffs(out.into_iter().map(|c| (c % M as u32) as u8).collect())
    }

    /// Cyclic coefficient vector of length `n` (the polynomial must already be
    /// reduced, i.e. have degree < n).
    pub fn to_vector(&self, n: usize) -> Vec<u8> {
        let reduced = self.reduce_xn1(n);
        let mut v = reduced.coeffs;
        v.resize(n, 0);
        v
    }

    /// Orders by degree, then lexicographically on coefficients from the
    /// constant term upwards. This is the canonical order for factors and
    /// divisors.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// Parses an ascending coefficient string such as `"323001"`.
    pub fn parse(s: &str) -> Result<Self, AlgebraError> {
        if s.is_empty() {
            return Err(AlgebraError::Malformed("empty coefficient string".into()));
        }
        let coeffs = s
            .chars()
            .map(|ch| match ch.to_digit(10) {
                Some(d) if d < M as u32 => Ok(d as u8),
                _ => Err(AlgebraError::Malformed(format!(
                    "invalid digit {ch:?} for modulus {M} in {s:?}"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_coeffs(coeffs))
    }

    /// Human-readable form in descending powers, e.g. `x^5 + 3x^2 + 2x + 3`.
    pub fn to_algebraic(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            });
        }
        terms.join(" + ")
    }
}

impl PolyZ4 {
    /// Reduction mod 2.
    pub fn reduce_mod2(&self) -> PolyZ2 {
        PolyZ2::from_coeffs(self.coeffs.clone())
    }
}

impl PolyZ2 {
    /// The embedding Z2[x] -> Z4[x] sending coefficients 0, 1 to 0, 1.
    pub fn to_z4(&self) -> PolyZ4 {
        PolyZ4::from_coeffs(self.coeffs.clone())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            // Over a field every nonzero polynomial is monic up to a unit,
            // and the only unit of Z2 is 1.
            let (_, r) = a.divrem(&b).expect("nonzero Z2 polynomial is monic");
            a = b;
            b = r;
        }
        a
    }
}

impl<const M: u8> fmt::Display for Poly<M> {
    /// Ascending coefficient string; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for c in &self.coeffs {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl<const M: u8> fmt::Debug for Poly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly<{M}>({self})")
    }
}

impl<const M: u8> FromStr for Poly<M> {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl<const M: u8> Add for &Poly<M> {
    type Output = Poly<M>;

    fn add(self, rhs: Self) -> Poly<M> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<const M: u8> Sub for &Poly<M> {
    type Output = Poly<M>;

    fn sub(self, rhs: Self) -> Poly<M> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..len).map(|i| self.coeff(i) + M - rhs.coeff(i)).collect())
    }
}

impl<const M: u8> Neg for &Poly<M> {
    type Output = Poly<M>;

    fn neg(self) -> Poly<M> {
        Poly::from_coeffs(self.coeffs.iter().map(|&c| M - c).collect())
    }
}

impl<const M: u8> Mul for &Poly<M> {
    type Output = Poly<M>;

    fn mul(self, rhs: Self) -> Poly<M> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u32; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += (a * b) as u32;
            }
        }
        Poly::from_coeffs(out.into_iter().map(|c| (c % M as u32) as u8).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<const M: u8> $tr for Poly<M> {
            type Output = Poly<M>;

            fn $m(self, rhs: Self) -> Poly<M> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_table_strings() {
        let g = PolyZ4::parse("323001").unwrap();
        assert_eq!(g.coeffs(), &[3, 2, 3, 0, 0, 1]);
        assert_eq!(g.degree(), Some(5));
        assert_eq!(g.to_algebraic(), "x^5 + 3x^2 + 2x + 3");
        assert_eq!(PolyZ4::parse("1").unwrap(), PolyZ4::one());
        assert_eq!(PolyZ4::parse("31").unwrap().coeffs(), &[3, 1]);
    }

    #[test]
    fn parse_rejects_bad_digits() {
        assert!(PolyZ4::parse("1241").is_err());
        assert!(PolyZ2::parse("12").is_err());
        assert!(PolyZ4::parse("").is_err());
        assert!(PolyZ4::parse("3a").is_err());
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = PolyZ4::parse("3100").unwrap();
        assert_eq!(p.to_string(), "31");
        assert_eq!(PolyZ4::parse("000").unwrap(), PolyZ4::zero());
        assert_eq!(PolyZ4::zero().to_string(), "0");
    }

    #[test]
    fn mulmod_with_zero_divisor_product() {
        // (x + 3)(x + 1) = x^2 + 3 = 1 + 3 = 0 in Z4[x]/(x^2 - 1).
        let a = PolyZ4::parse("31").unwrap();
        let b = PolyZ4::parse("11").unwrap();
        assert!(a.mulmod_xn1(&b, 2).is_zero());
        assert_eq!(&a * &PolyZ4::one(), a);
    }

    #[test]
    fn divrem_x7_minus_one_by_x_plus_3() {
        let f = PolyZ4::xn_minus_one(7);
        let d = PolyZ4::parse("31").unwrap();
        let (q, r) = f.divrem(&d).unwrap();
        assert_eq!(q.degree(), Some(6));
        assert!(r.is_zero());
        assert_eq!(&q * &d, f);
    }

    #[test]
    fn divrem_requires_monic() {
        let f = PolyZ4::xn_minus_one(3);
        assert!(matches!(
            f.divrem(&PolyZ4::parse("12").unwrap()),
            Err(AlgebraError::NonMonicDivisor(_))
        ));
        assert!(matches!(f.divrem(&PolyZ4::zero()), Err(AlgebraError::DivisionByZero)));
    }

    #[test]
    fn gcd_over_z2() {
        let a = PolyZ2::parse("11").unwrap();
        let b = PolyZ2::parse("111").unwrap();
        assert!(a.gcd(&b).is_one());
        let c = PolyZ2::parse("101").unwrap(); // (x+1)^2
        assert_eq!(a.gcd(&c), a);
    }

    fn poly4() -> impl Strategy<Value = PolyZ4> {
        proptest::collection::vec(0u8..4, 0..12).prop_map(PolyZ4::from_coeffs)
    }

    proptest! {
        #[test]
        fn string_round_trip(s in "[0-3]{0,20}[1-3]") {
            let p = PolyZ4::parse(&s).unwrap();
            prop_assert_eq!(p.to_string(), s);
        }

        #[test]
        fn divrem_reconstructs(a in poly4(), b in poly4()) {
            let mut b = b;
            // force a monic divisor
            let mut c = b.coeffs().to_vec();
            c.push(1);
            b = PolyZ4::from_coeffs(c);
            let (q, r) = a.divrem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree().map_or(true, |d| d < b.degree().unwrap()));
        }

        #[test]
        fn ring_laws(a in poly4(), b in poly4(), c in poly4()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            prop_assert_eq!(&a + &(-&a), PolyZ4::zero());
            prop_assert_eq!(a.mulmod_xn1(&b, 5), (&a * &b).reduce_xn1(5));
        }
    }
}
