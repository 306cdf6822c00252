//! Symmetrized weight enumerators and the Z4 MacWilliams transform.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

use super::scan::{scan, Census, PackedGenerator};
use super::DistanceError;
use crate::codes::Z4Code;

/// Codeword census by composition: `counts[(a, b, c)]` is the number of words
/// with `a` zeros, `b` coordinates in {1, 3} and `c` twos.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrizedWeightEnumerator {
    n: usize,
    counts: BTreeMap<(usize, usize, usize), BigUint>,
}

pub type Swe = SymmetrizedWeightEnumerator;

impl SymmetrizedWeightEnumerator {
    /// Builds an enumerator from explicit entries; zero counts are dropped.
    pub fn from_counts(
        n: usize,
        entries: impl IntoIterator<Item = ((usize, usize, usize), BigUint)>,
    ) -> Result<Self, DistanceError> {
        let mut counts = BTreeMap::new();
        for ((a, b, c), v) in entries {
            if a + b + c != n {
                return Err(DistanceError::Inconsistent(format!(
                    "composition ({a},{b},{c}) does not sum to {n}"
                )));
            }
            if !v.is_zero() {
                *counts.entry((a, b, c)).or_insert_with(BigUint::zero) += v;
            }
        }
        Ok(Self { n, counts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> BigUint {
        self.counts.get(&(a, b, c)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize, usize), &BigUint)> {
        self.counts.iter()
    }

    /// Number of codewords.
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Smallest b + 2c over nonzero compositions, i.e. the minimum Lee weight.
    pub fn min_lee_weight(&self) -> Option<u32> {
        self.counts
            .keys()
            .filter(|&&(a, _, _)| a != self.n)
            .map(|&(_, b, c)| (b + 2 * c) as u32)
            .min()
    }
}

/// Exact census of the code by enumerating every word.
pub fn swe_by_enumeration(code: &Z4Code, budget: u64) -> Result<Swe, DistanceError> {
    swe_with_deadline(code, budget, None)
}

pub(crate) fn swe_with_deadline(
    code: &Z4Code,
    budget: u64,
    deadline: Option<Instant>,
) -> Result<Swe, DistanceError> {
    let size_log2 = code.size_log2();
    if size_log2 >= 64 || (1u64 << size_log2) > budget {
        return Err(DistanceError::BudgetExceeded { size_log2, budget });
    }
    let n = code.n();
    if code.is_zero() {
        return Swe::from_counts(n, [((n, 0, 0), BigUint::one())]);
    }
    let gen = PackedGenerator::new(code)?;
    let census = scan(&gen, Census::new(gen.n()), deadline).map_err(|_| DistanceError::TimedOut)?;
    let entries = census.counts.iter().enumerate().filter(|(_, &v)| v > 0).map(|(idx, &v)| {
        let (b, c) = (idx / (n + 1), idx % (n + 1));
        ((n - b - c, b, c), BigUint::from(v))
    });
    Swe::from_counts(n, entries)
}

/// Enumerator of the dual code: substitutes (X, Y, Z) -> (X + 2Y + Z, X - Z,
/// X - 2Y + Z) in sum N[a,b,c] X^a Y^b Z^c and divides by the code size.
///
/// With W = X + Z the first and last factors are W + 2Y and W - 2Y, so
/// (W + 2Y)^a (W - 2Y)^c = sum_t kappa_t Y^t W^(a+c-t) and each
/// W^m (X - Z)^b is a Krawtchouk-style expansion in X and Z alone.
pub fn macwilliams_swe(s: &Swe, code_size: &BigUint) -> Result<Swe, DistanceError> {
    if &s.total() != code_size || code_size.is_zero() {
        return Err(DistanceError::Inconsistent(format!(
            "enumerator sums to {}, code size given as {code_size}",
            s.total()
        )));
    }
    let n = s.n;
    let binom = pascal(n);
    let mut xz_cache: HashMap<(usize, usize), Vec<BigInt>> = HashMap::new();
    // acc[t * (n + 1) + u] is the coefficient of X^(n-t-u) Y^t Z^u
    let mut acc = vec![BigInt::zero(); (n + 1) * (n + 1)];

    for (&(a, b, c), count) in &s.counts {
        let count = BigInt::from_biguint(Sign::Plus, count.clone());
        for t in 0..=(a + c) {
            let mut kappa = BigInt::zero();
            for j in t.saturating_sub(c)..=t.min(a) {
                let term = &binom[a][j] * &binom[c][t - j];
                if (t - j) % 2 == 1 {
                    kappa -= term;
                } else {
                    kappa += term;
                }
            }
            if kappa.is_zero() {
                continue;
            }
            let weight = (kappa << t) * &count;
            let m = a + c - t;
            let xz = xz_cache.entry((m, b)).or_insert_with(|| xz_expansion(m, b, &binom));
            for (u, l) in xz.iter().enumerate() {
                if !l.is_zero() {
                    acc[t * (n + 1) + u] += &weight * l;
                }
            }
        }
    }

    let divisor = BigInt::from_biguint(Sign::Plus, code_size.clone());
    let mut entries = Vec::new();
    for t in 0..=n {
        for u in 0..=(n - t) {
            let v = &acc[t * (n + 1) + u];
            if v.is_zero() {
                continue;
            }
            if v.is_negative() || !(v % &divisor).is_zero() {
                return Err(DistanceError::Inconsistent(format!(
                    "transformed count {v} at ({},{t},{u}) is not a nonnegative multiple of {divisor}",
                    n - t - u
                )));
            }
            let q = (v / &divisor).to_biguint().expect("nonnegative");
            entries.push(((n - t - u, t, u), q));
        }
    }
    Swe::from_counts(n, entries)
}

/// Coefficients of Z^u in (X + Z)^m (X - Z)^b, u = 0..=m+b.
fn xz_expansion(m: usize, b: usize, binom: &[Vec<BigInt>]) -> Vec<BigInt> {
    (0..=(m + b))
        .map(|u| {
            let mut s = BigInt::zero();
            for i in u.saturating_sub(b)..=u.min(m) {
                let term = &binom[m][i] * &binom[b][u - i];
                if (u - i) % 2 == 1 {
                    s -= term;
                } else {
                    s += term;
                }
            }
            s
        })
        .collect()
}

fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{standard_form, Z4Matrix};

    fn swe(n: usize, entries: &[((usize, usize, usize), u64)]) -> Swe {
        Swe::from_counts(n, entries.iter().map(|&(k, v)| (k, BigUint::from(v)))).unwrap()
    }

    fn code(rows: &[&str]) -> Z4Code {
        standard_form(&Z4Matrix::parse(&rows.join("\n")).unwrap())
    }

    #[test]
    fn enumerated_examples() {
        assert_eq!(swe_by_enumeration(&Z4Code::zero(1), 1).unwrap(), swe(1, &[((1, 0, 0), 1)]));
        assert_eq!(
            swe_by_enumeration(&code(&["1"]), 4).unwrap(),
            swe(1, &[((1, 0, 0), 1), ((0, 1, 0), 2), ((0, 0, 1), 1)])
        );
        assert_eq!(
            swe_by_enumeration(&code(&["11"]), 4).unwrap(),
            swe(2, &[((2, 0, 0), 1), ((0, 2, 0), 2), ((0, 0, 2), 1)])
        );
    }

    #[test]
    fn transform_of_full_and_zero_codes() {
        let full = swe(1, &[((1, 0, 0), 1), ((0, 1, 0), 2), ((0, 0, 1), 1)]);
        let zero = swe(1, &[((1, 0, 0), 1)]);
        assert_eq!(macwilliams_swe(&full, &BigUint::from(4u32)).unwrap(), zero);
        assert_eq!(macwilliams_swe(&zero, &BigUint::one()).unwrap(), full);
    }

    #[test]
    fn double_transform_is_identity() {
        let c = code(&["1102", "0123"]);
        let s = swe_by_enumeration(&c, 1 << 10).unwrap();
        let d = macwilliams_swe(&s, &s.total()).unwrap();
        assert_eq!(d.total(), BigUint::from(16u32));
        assert_eq!(macwilliams_swe(&d, &d.total()).unwrap(), s);
    }

    #[test]
    fn inconsistent_input_is_rejected() {
        let s = swe(2, &[((2, 0, 0), 1), ((0, 2, 0), 1)]);
        assert!(matches!(
            macwilliams_swe(&s, &BigUint::from(3u32)),
            Err(DistanceError::Inconsistent(_))
        ));
        // sums correctly but is not the enumerator of a code
        let s = swe(2, &[((2, 0, 0), 1), ((0, 2, 0), 2)]);
        assert!(matches!(
            macwilliams_swe(&s, &BigUint::from(3u32)),
            Err(DistanceError::Inconsistent(_))
        ));
    }

    #[test]
    fn large_counts_stay_exact() {
        // [125,120,5] style: a 2^5 code transformed to a 2^245 code
        let rows: Vec<Vec<u8>> = (0..5)
            .map(|i| (0..125).map(|j| if j % 5 == i { 2 } else { 0 }).collect())
            .collect();
        let c = standard_form(&Z4Matrix::from_rows(125, &rows).unwrap());
        let s = swe_by_enumeration(&c, 64).unwrap();
        let d = macwilliams_swe(&s, &s.total()).unwrap();
        assert_eq!(d.total(), BigUint::one() << 245u32);
        assert_eq!(d.min_lee_weight(), Some(2));
    }
}
