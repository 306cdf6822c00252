use std::fmt;

use super::CodeError;

/// A dense rows x cols matrix over Z4.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Z4Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Z4Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    /// Builds a matrix from row vectors, reducing entries mod 4. All rows
    /// must have length `cols`.
    pub fn from_rows<R: AsRef<[u8]>>(cols: usize, rows: &[R]) -> Result<Self, CodeError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(CodeError::NotRectangular { row: i, len: r.len(), cols });
            }
            data.extend(r.iter().map(|&x| x % 4));
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    /// Parses the row-per-line digit format. Blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self, CodeError> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.chars()
                    .map(|c| match c {
                        '0'..='3' => Ok(c as u8 - b'0'),
                        _ => Err(CodeError::Malformed(format!("invalid Z4 digit {c:?} in {l:?}"))),
                    })
                    .collect::<Result<Vec<u8>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(cols, &rows)
    }

    /// Row-per-line digit strings, LF-terminated.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols + 1));
        for r in self.iter_rows() {
            s.extend(r.iter().map(|&x| (b'0' + x) as char));
            s.push('\n');
        }
        s
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v % 4;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[u8]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.iter_rows().map(<[u8]>::to_vec).collect()
    }

    /// self * other^T mod 4.
    pub fn mul_transpose(&self, other: &Z4Matrix) -> Z4Matrix {
        assert_eq!(self.cols, other.cols);
        let mut out = Z4Matrix::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                let s: u32 = self
                    .row(i)
                    .iter()
                    .zip(other.row(j))
                    .map(|(&a, &b)| (a * b) as u32)
                    .sum();
                out.set(i, j, (s % 4) as u8);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

impl fmt::Debug for Z4Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Z4Matrix {}x{}", self.rows, self.cols)?;
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_format() {
        let m = Z4Matrix::parse("1023\n0200\n\n").unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 4);
        assert_eq!(m.get(0, 3), 3);
        assert_eq!(m.to_text(), "1023\n0200\n");
        assert!(Z4Matrix::parse("12\n123\n").is_err());
        assert!(Z4Matrix::parse("14\n").is_err());
    }
}
