//! Factorization of x^n - 1 over Z2 for odd n.
//!
//! The irreducible factors are the minimal polynomials of alpha^j, one per
//! 2-cyclotomic coset of j mod n, where alpha is a primitive n-th root of
//! unity in GF(2^s) and s is the multiplicative order of 2 mod n. For odd
//! n <= 127 the largest such s is 110 (n = 121), so field elements fit in a
//! `u128`.

use super::poly::PolyZ2;
use super::AlgebraError;

/// Largest length handled by the factorization routines.
pub const MAX_LENGTH: usize = 127;

/// The factorization of x^n - 1 over Z2 into monic irreducibles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationZ2 {
    n: usize,
    factors: Vec<PolyZ2>,
}

impl FactorizationZ2 {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Factors sorted by degree, then lexicographically on coefficients.
    pub fn factors(&self) -> &[PolyZ2] {
        &self.factors
    }

    /// Number of irreducible factors.
    pub fn r(&self) -> usize {
        self.factors.len()
    }
}

/// The 2-cyclotomic cosets mod n, each sorted, ordered by smallest element.
pub fn cyclotomic_cosets(n: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut cosets = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut coset = Vec::new();
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            coset.push(j);
            j = (2 * j) % n;
        }
        coset.sort_unstable();
        cosets.push(coset);
    }
    cosets
}

/// Multiplicative order of 2 modulo odd n (1 for n = 1).
pub fn order_of_two(n: usize) -> u32 {
    if n == 1 {
        return 1;
    }
    let mut k = 1;
    let mut v = 2 % n;
    while v != 1 {
        v = (2 * v) % n;
        k += 1;
    }
    k
}

fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Carry-less polynomial arithmetic on `u128` bit vectors (bit i = coeff of x^i).
fn clmul_mod(a: u128, b: u128, modulus: u128, s: u32) -> u128 {
    let mut r = 0u128;
    for i in (0..s).rev() {
        r <<= 1;
        if (r >> s) & 1 == 1 {
            r ^= modulus;
        }
        if (b >> i) & 1 == 1 {
            r ^= a;
        }
    }
    r
}

fn bit_degree(a: u128) -> i32 {
    127 - a.leading_zeros() as i32
}

fn bits_rem(mut a: u128, b: u128) -> u128 {
    let db = bit_degree(b);
    while a != 0 && bit_degree(a) >= db {
        a ^= b << (bit_degree(a) - db);
    }
    a
}

fn bits_gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = bits_rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// GF(2^s) represented modulo a fixed irreducible polynomial of degree s.
#[derive(Clone, Copy, Debug)]
struct ExtField {
    s: u32,
    modulus: u128,
}

impl ExtField {
    fn mul(&self, a: u128, b: u128) -> u128 {
        clmul_mod(a, b, self.modulus, self.s)
    }

    fn pow(&self, mut base: u128, mut e: u128) -> u128 {
        let mut acc = 1u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn reduce(&self, a: u128) -> u128 {
        bits_rem(a, self.modulus)
    }

    /// x^(2^k) in this field.
    fn frobenius_x(&self, k: u32) -> u128 {
        let mut v = self.reduce(2);
        for _ in 0..k {
            v = self.mul(v, v);
        }
        v
    }

    /// Rabin's irreducibility test for the modulus itself.
    fn modulus_is_irreducible(&self) -> bool {
        let x = self.reduce(2);
        if self.frobenius_x(self.s) != x {
            return false;
        }
        prime_factors(self.s as u128).into_iter().all(|q| {
            let t = self.frobenius_x(self.s / q as u32) ^ x;
            bits_gcd(self.modulus, t) == 1
        })
    }

    /// The first irreducible polynomial of degree s with nonzero constant
    /// term, in increasing integer order of its bit vector.
    fn smallest(s: u32) -> ExtField {
        let mut candidate = (1u128 << s) | 1;
        loop {
            let field = ExtField { s, modulus: candidate };
            if field.modulus_is_irreducible() {
                return field;
            }
            candidate += 2;
        }
    }
}

/// Tests irreducibility of a binary polynomial of degree <= 126.
pub fn is_irreducible_z2(p: &PolyZ2) -> bool {
    match p.degree() {
        None | Some(0) => false,
        Some(d) if d > 126 => panic!("degree {d} too large for packed irreducibility test"),
        Some(d) => {
            let bits = to_bits(p);
            ExtField { s: d as u32, modulus: bits }.modulus_is_irreducible()
        }
    }
}

fn to_bits(p: &PolyZ2) -> u128 {
    p.coeffs()
        .iter()
        .enumerate()
        .fold(0u128, |acc, (i, &c)| acc | ((c as u128) << i))
}

/// Factors x^n - 1 over Z2 for odd n in 1..=127.
pub fn factor_xn1_z2(n: usize) -> Result<FactorizationZ2, AlgebraError> {
    if n == 0 || n % 2 == 0 || n > MAX_LENGTH {
        return Err(AlgebraError::UnsupportedLength(n));
    }
    let s = order_of_two(n);
    let field = ExtField::smallest(s);
    let group_order = (1u128 << s) - 1;
    let cofactor = group_order / n as u128;
    let n_primes = prime_factors(n as u128);

    // Any element raised to the cofactor has order dividing n; take the first
    // candidate whose order is exactly n.
    let alpha = (2u128..)
        .map(|beta| field.pow(field.reduce(beta), cofactor))
        .find(|&a| {
            a != 0
                && n_primes
                    .iter()
                    .all(|&q| field.pow(a, n as u128 / q) != 1)
        })
        .expect("GF(2^s)* is cyclic and contains elements of every order dividing 2^s - 1");

    let mut factors: Vec<PolyZ2> = cyclotomic_cosets(n)
        .iter()
        .map(|coset| minimal_polynomial(&field, alpha, coset))
        .collect();
    factors.sort_by(|a, b| a.canonical_cmp(b));
    Ok(FactorizationZ2 { n, factors })
}

/// prod over j in coset of (X - alpha^j); the coefficients land in GF(2).
fn minimal_polynomial(field: &ExtField, alpha: u128, coset: &[usize]) -> PolyZ2 {
    // coefficients in ascending order, each a field element
    let mut acc: Vec<u128> = vec![1];
    for &j in coset {
        let root = field.pow(alpha, j as u128);
        let mut next = vec![0u128; acc.len() + 1];
        for (i, &c) in acc.iter().enumerate() {
            next[i + 1] ^= c;
            next[i] ^= field.mul(c, root);
        }
        acc = next;
    }
    let coeffs = acc
        .into_iter()
        .map(|c| {
            assert!(c <= 1, "minimal polynomial coefficient outside GF(2)");
            c as u8
        })
        .collect();
    PolyZ2::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(ps: &[PolyZ2]) -> PolyZ2 {
        ps.iter().fold(PolyZ2::one(), |acc, p| &acc * p)
    }

    #[test]
    fn n7_has_degrees_1_3_3() {
        let f = factor_xn1_z2(7).unwrap();
        let degs: Vec<_> = f.factors().iter().map(|p| p.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 3, 3]);
        assert_eq!(product(f.factors()), PolyZ2::xn_minus_one(7));
        // lexicographic tie-break on the ascending coefficient strings
        assert_eq!(f.factors()[1].to_string(), "1011");
        assert_eq!(f.factors()[2].to_string(), "1101");
    }

    #[test]
    fn small_lengths() {
        let f1 = factor_xn1_z2(1).unwrap();
        assert_eq!(f1.factors(), &[PolyZ2::parse("11").unwrap()]);
        let f3 = factor_xn1_z2(3).unwrap();
        assert_eq!(
            f3.factors(),
            &[PolyZ2::parse("11").unwrap(), PolyZ2::parse("111").unwrap()]
        );
    }

    #[test]
    fn rejects_even_and_out_of_range() {
        for n in [0, 2, 8, 128, 129] {
            assert!(matches!(factor_xn1_z2(n), Err(AlgebraError::UnsupportedLength(_))));
        }
    }

    #[test]
    fn order_of_two_extremes() {
        assert_eq!(order_of_two(121), 110);
        assert_eq!(order_of_two(107), 106);
        assert_eq!(order_of_two(127), 7);
        assert_eq!(order_of_two(125), 100);
    }

    #[test]
    fn irreducibility_test() {
        assert!(is_irreducible_z2(&PolyZ2::parse("111").unwrap()));
        assert!(!is_irreducible_z2(&PolyZ2::parse("101").unwrap()));
        assert!(is_irreducible_z2(&PolyZ2::parse("11001").unwrap()));
        assert!(!is_irreducible_z2(&PolyZ2::parse("1").unwrap()));
    }
}
