use super::matrix::Z4Matrix;
use super::CodeError;

/// A linear code over Z4 held in standard form
///
/// ```text
/// [ I_k1  A     B  ]
/// [ 0     2I_k2 2C ]
/// ```
///
/// with A, C binary and B over Z4. `perm[j]` is the original coordinate of
/// standard-form column j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z4Code {
    n: usize,
    gen: Z4Matrix,
    k1: usize,
    k2: usize,
    perm: Vec<usize>,
}

/// Row reduction over Z4 to standard form. Unit pivots are taken first; once
/// no unit remains in the unreduced block, the remaining rows are even and a
/// second pass takes 2-pivots. Column swaps are recorded in the permutation.
pub fn standard_form(m: &Z4Matrix) -> Z4Code {
    let n = m.cols();
    let mut rows = m.to_rows();
    let mut perm: Vec<usize> = (0..n).collect();

    let swap_cols = |rows: &mut Vec<Vec<u8>>, perm: &mut Vec<usize>, a: usize, b: usize| {
        if a != b {
            for r in rows.iter_mut() {
                r.swap(a, b);
            }
            perm.swap(a, b);
        }
    };
    // row_t -= c * row_p
    let eliminate = |rows: &mut Vec<Vec<u8>>, t: usize, p: usize, c: u8| {
        let (tr, pr) = if t < p {
            let (lo, hi) = rows.split_at_mut(p);
            (&mut lo[t], &hi[0])
        } else {
            let (lo, hi) = rows.split_at_mut(t);
            (&mut hi[0], &lo[p])
        };
        for (x, &y) in tr.iter_mut().zip(pr.iter()) {
            *x = (*x + 4 * 4 - c * y) % 4;
        }
    };

    let mut k1 = 0;
    while let Some((i, j)) = find_pivot(&rows, k1, |x| x % 2 == 1) {
        rows.swap(i, k1);
        swap_cols(&mut rows, &mut perm, j, k1);
        if rows[k1][k1] == 3 {
            for x in rows[k1].iter_mut() {
                *x = (*x * 3) % 4;
            }
        }
        for t in 0..rows.len() {
            let c = rows[t][k1];
            if t != k1 && c != 0 {
                eliminate(&mut rows, t, k1, c);
            }
        }
        k1 += 1;
    }

    let mut k2 = 0;
    while let Some((i, j)) = find_pivot(&rows, k1 + k2, |x| x == 2) {
        let p = k1 + k2;
        rows.swap(i, p);
        swap_cols(&mut rows, &mut perm, j, p);
        for t in 0..rows.len() {
            if t != p && rows[t][p] >= 2 {
                eliminate(&mut rows, t, p, 1);
            }
        }
        k2 += 1;
    }

    rows.truncate(k1 + k2);
    let gen = Z4Matrix::from_rows(n, &rows).expect("rows keep their length");
    Z4Code { n, gen, k1, k2, perm }
}

/// First (row, col) with row >= start and col >= start whose entry matches.
fn find_pivot(rows: &[Vec<u8>], start: usize, want: impl Fn(u8) -> bool) -> Option<(usize, usize)> {
    rows.iter().enumerate().skip(start).find_map(|(i, r)| {
        r.iter()
            .enumerate()
            .skip(start)
            .find(|(_, &x)| want(x))
            .map(|(j, _)| (i, j))
    })
}

impl Z4Code {
    /// The code generated by the rows of `m`.
    pub fn from_generator(m: &Z4Matrix) -> Self {
        standard_form(m)
    }

    pub fn zero(n: usize) -> Self {
        standard_form(&Z4Matrix::zeros(0, n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn k2(&self) -> usize {
        self.k2
    }

    /// Standard-form generator, in standard-form coordinates.
    pub fn generator(&self) -> &Z4Matrix {
        &self.gen
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_zero(&self) -> bool {
        self.k1 + self.k2 == 0
    }

    pub fn is_free(&self) -> bool {
        self.k2 == 0
    }

    /// log2 of the code size, 2 k1 + k2.
    pub fn size_log2(&self) -> u32 {
        (2 * self.k1 + self.k2) as u32
    }

    /// log2 of the dual code size, 2n - 2 k1 - k2.
    pub fn dual_size_log2(&self) -> u32 {
        (2 * self.n - 2 * self.k1 - self.k2) as u32
    }

    /// Standard-form generator with columns mapped back to the original
    /// coordinates.
    pub fn generator_original(&self) -> Z4Matrix {
        let rows: Vec<Vec<u8>> = self.gen.iter_rows().map(|r| self.to_original(r)).collect();
        Z4Matrix::from_rows(self.n, &rows).expect("rectangular")
    }

    pub fn to_original(&self, std_word: &[u8]) -> Vec<u8> {
        let mut out = vec![0; self.n];
        for (j, &x) in std_word.iter().enumerate() {
            out[self.perm[j]] = x;
        }
        out
    }

    pub fn to_standard(&self, word: &[u8]) -> Vec<u8> {
        self.perm.iter().map(|&p| word[p]).collect()
    }

    /// Radix of each message symbol: 4 for the k1 free rows, 2 for the k2
    /// order-2 rows.
    pub fn message_radices(&self) -> Vec<u8> {
        let mut r = vec![4; self.k1];
        r.resize(self.k1 + self.k2, 2);
        r
    }

    /// Encodes a message (standard-form coordinates in the output).
    pub fn encode_standard(&self, message: &[u8]) -> Vec<u8> {
        let mut w = vec![0u8; self.n];
        for (row, &m) in self.gen.iter_rows().zip(message) {
            for (x, &g) in w.iter_mut().zip(row) {
                *x = (*x + m * g) % 4;
            }
        }
        w
    }

    /// Membership test for a word in standard-form coordinates.
    pub fn contains_standard(&self, word: &[u8]) -> bool {
        if word.len() != self.n {
            return false;
        }
        let mut w = word.to_vec();
        for i in 0..self.k1 {
            let c = w[i];
            if c != 0 {
                for (x, &g) in w.iter_mut().zip(self.gen.row(i)) {
                    *x = (*x + 16 - c * g) % 4;
                }
            }
        }
        for j in 0..self.k2 {
            let p = self.k1 + j;
            match w[p] {
                0 => {}
                2 => {
                    for (x, &g) in w.iter_mut().zip(self.gen.row(p)) {
                        *x = (*x + 4 - g) % 4;
                    }
                }
                _ => return false,
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// Membership test for a word in original coordinates.
    pub fn contains(&self, word: &[u8]) -> bool {
        word.len() == self.n && self.contains_standard(&self.to_standard(word))
    }

    /// The dual code with respect to the standard inner product mod 4.
    ///
    /// Built from the standard form as
    ///
    /// ```text
    /// [ -(B + AC)^T  C^T  I ]
    /// [ 2A^T         2I   0 ]
    /// ```
    ///
    /// and checked for orthogonality and for type 4^(n-k1-k2) 2^k2 before
    /// it is returned.
    pub fn dual(&self) -> Result<Z4Code, CodeError> {
        let (n, k1, k2) = (self.n, self.k1, self.k2);
        let r = n - k1 - k2;
        let a = |i: usize, j: usize| self.gen.get(i, k1 + j);
        let b = |i: usize, t: usize| self.gen.get(i, k1 + k2 + t);
        let c = |j: usize, t: usize| self.gen.get(k1 + j, k1 + k2 + t) / 2;

        let mut rows = Vec::with_capacity(r + k2);
        for t in 0..r {
            let mut row = vec![0u8; n];
            for (i, x) in row.iter_mut().enumerate().take(k1) {
                let ac: u32 = (0..k2).map(|j| (a(i, j) * c(j, t)) as u32).sum();
                let s = (b(i, t) as u32 + ac) % 4;
                *x = ((4 - s) % 4) as u8;
            }
            for j in 0..k2 {
                row[k1 + j] = c(j, t);
            }
            row[k1 + k2 + t] = 1;
            rows.push(self.to_original(&row));
        }
        for j in 0..k2 {
            let mut row = vec![0u8; n];
            for (i, x) in row.iter_mut().enumerate().take(k1) {
                *x = (2 * a(i, j)) % 4;
            }
            row[k1 + j] = 2;
            rows.push(self.to_original(&row));
        }
        let h = Z4Matrix::from_rows(n, &rows)?;
        let dual = standard_form(&h);

        if !self.generator_original().mul_transpose(&h).is_zero() {
            return Err(CodeError::DualVerification("G H^T is not zero mod 4".into()));
        }
        if (dual.k1, dual.k2) != (r, k2) {
            return Err(CodeError::DualVerification(format!(
                "dual has type 4^{} 2^{}, expected 4^{} 2^{}",
                dual.k1, dual.k2, r, k2
            )));
        }
        Ok(dual)
    }

    /// Every codeword exactly once, in original coordinates.
    pub fn enumerate_codewords(&self, budget: u64) -> Result<Codewords<'_>, CodeError> {
        let size_log2 = self.size_log2();
        if size_log2 >= 64 || (1u64 << size_log2) > budget {
            return Err(CodeError::BudgetExceeded { size_log2, budget });
        }
        Ok(Codewords::new(self, 0, 1u64 << size_log2))
    }
}

/// Iterator over the codewords with message indices in `[start, end)`.
///
/// Message index digits are mixed radix (4 for free rows, 2 for order-2
/// rows), least significant first. Advancing the index adds each changed
/// row once; a digit wrapping to zero adds its row radix times in total,
/// which is zero, so the running word stays equal to the encoded message.
#[derive(Clone, Debug)]
pub struct Codewords<'a> {
    code: &'a Z4Code,
    radices: Vec<u8>,
    digits: Vec<u8>,
    word: Vec<u8>,
    pos: u64,
    end: u64,
}

impl<'a> Codewords<'a> {
    fn new(code: &'a Z4Code, start: u64, end: u64) -> Self {
        let radices = code.message_radices();
        let digits = message_digits(start, &radices);
        let word = code.encode_standard(&digits);
        Self { code, radices, digits, word, pos: start, end }
    }

    /// Splits the remaining range into at most `parts` contiguous pieces.
    pub fn split_range(&self, parts: u64) -> Vec<Codewords<'a>> {
        let len = self.end - self.pos;
        let parts = parts.clamp(1, len.max(1));
        (0..parts)
            .map(|p| {
                let s = self.pos + len * p / parts;
                let e = self.pos + len * (p + 1) / parts;
                Codewords::new(self.code, s, e)
            })
            .collect()
    }
}

impl Iterator for Codewords<'_> {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.pos >= self.end {
            return None;
        }
        let out = self.code.to_original(&self.word);
        self.pos += 1;
        for (i, &radix) in self.radices.iter().enumerate() {
            for (x, &g) in self.word.iter_mut().zip(self.code.gen.row(i)) {
                *x = (*x + g) % 4;
            }
            self.digits[i] += 1;
            if self.digits[i] < radix {
                break;
            }
            self.digits[i] = 0;
        }
        Some(out)
    }
}

/// Mixed-radix digits of `index`, least significant first.
pub fn message_digits(mut index: u64, radices: &[u8]) -> Vec<u8> {
    radices
        .iter()
        .map(|&r| {
            let d = (index % r as u64) as u8;
            index /= r as u64;
            d
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    /// Row span by closure under addition of generators (independent of the
    /// standard form).
    fn span(m: &Z4Matrix) -> BTreeSet<Vec<u8>> {
        let mut set = BTreeSet::new();
        set.insert(vec![0u8; m.cols()]);
        let mut frontier = vec![vec![0u8; m.cols()]];
        while let Some(w) = frontier.pop() {
            for r in m.iter_rows() {
                let s: Vec<u8> = w.iter().zip(r).map(|(a, b)| (a + b) % 4).collect();
                if set.insert(s.clone()) {
                    frontier.push(s);
                }
            }
        }
        set
    }

    fn m(rows: &[&str]) -> Z4Matrix {
        Z4Matrix::parse(&rows.join("\n")).unwrap()
    }

    #[test]
    fn single_two() {
        let c = standard_form(&m(&["2"]));
        assert_eq!((c.k1(), c.k2()), (0, 1));
    }

    #[test]
    fn unit_and_two_rows() {
        let g = m(&["11", "02"]);
        let c = standard_form(&g);
        assert_eq!((c.k1(), c.k2()), (1, 1));
        assert_eq!(span(&g).len(), 8);
        let words: BTreeSet<_> = c.enumerate_codewords(1 << 20).unwrap().collect();
        assert_eq!(words, span(&g));
    }

    #[test]
    fn zero_matrix_gives_zero_code() {
        let c = standard_form(&Z4Matrix::zeros(3, 4));
        assert!(c.is_zero());
        let words: Vec<_> = c.enumerate_codewords(1).unwrap().collect();
        assert_eq!(words, vec![vec![0; 4]]);
    }

    #[test]
    fn repetition_span() {
        let c = standard_form(&m(&["11"]));
        let words: BTreeSet<_> = c.enumerate_codewords(16).unwrap().collect();
        let expected: BTreeSet<_> = [[0, 0], [1, 1], [2, 2], [3, 3]].iter().map(|w| w.to_vec()).collect();
        assert_eq!(words, expected);
    }

    #[test]
    fn budget_refusal() {
        let c = standard_form(&m(&["1000", "0100", "0010"]));
        assert!(matches!(
            c.enumerate_codewords(32),
            Err(CodeError::BudgetExceeded { size_log2: 6, .. })
        ));
    }

    #[test]
    fn dual_examples() {
        let c = standard_form(&m(&["11"]));
        let d = c.dual().unwrap();
        let dw: BTreeSet<_> = d.enumerate_codewords(16).unwrap().collect();
        // brute force: all v with v . (1,1) = 0 mod 4
        let brute: BTreeSet<_> = (0..16u8)
            .map(|i| vec![i & 3, i >> 2])
            .filter(|v| (v[0] + v[1]) % 4 == 0)
            .collect();
        assert_eq!(dw, brute);
        assert!(d.contains(&[1, 3]));

        let full = standard_form(&m(&["100", "010", "001"]));
        assert!(full.dual().unwrap().is_zero());
        assert_eq!(Z4Code::zero(3).dual().unwrap().size_log2(), 6);
    }

    #[test]
    fn partitions_cover_range() {
        let c = standard_form(&m(&["1012", "0123", "0022"]));
        let all: Vec<_> = c.enumerate_codewords(1 << 10).unwrap().collect();
        let parts: Vec<_> = c
            .enumerate_codewords(1 << 10)
            .unwrap()
            .split_range(5)
            .into_iter()
            .flatten()
            .collect();
        assert_eq!(all, parts);
        assert_eq!(all.len(), 32);
    }

    fn small_matrix() -> impl Strategy<Value = Z4Matrix> {
        (1usize..5, 1usize..7).prop_flat_map(|(r, n)| {
            proptest::collection::vec(proptest::collection::vec(0u8..4, n), r)
                .prop_map(move |rows| Z4Matrix::from_rows(n, &rows).unwrap())
        })
    }

    proptest! {
        #[test]
        fn span_is_preserved(g in small_matrix()) {
            let c = standard_form(&g);
            let words: BTreeSet<_> = c.enumerate_codewords(1 << 16).unwrap().collect();
            let brute = span(&g);
            prop_assert_eq!(words.len() as u64, 1u64 << c.size_log2());
            prop_assert_eq!(words, brute);
        }

        #[test]
        fn standard_form_is_idempotent(g in small_matrix()) {
            let c = standard_form(&g);
            let again = standard_form(c.generator());
            prop_assert_eq!((again.k1(), again.k2()), (c.k1(), c.k2()));
            // the block shape holds
            let gen = c.generator();
            for i in 0..c.k1() {
                for j in 0..c.k1() {
                    prop_assert_eq!(gen.get(i, j), u8::from(i == j));
                }
            }
            for j in 0..c.k2() {
                let row = gen.row(c.k1() + j);
                prop_assert!(row.iter().all(|&x| x % 2 == 0));
                prop_assert_eq!(row[c.k1() + j], 2);
            }
        }

        #[test]
        fn dual_is_orthogonal_and_involutive(g in small_matrix()) {
            let c = standard_form(&g);
            let d = c.dual().unwrap();
            prop_assert_eq!(c.size_log2() + d.size_log2(), 2 * c.n() as u32);
            let cw: BTreeSet<_> = c.enumerate_codewords(1 << 12).unwrap().collect();
            let dd: BTreeSet<_> = d.dual().unwrap().enumerate_codewords(1 << 12).unwrap().collect();
            prop_assert_eq!(cw, dd);
        }
    }
}
