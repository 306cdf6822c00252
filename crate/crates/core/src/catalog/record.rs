//! The code record and its tab-separated line format.
//!
//! Fields, in order: n, k1, k2, d, construction, m, ell, g, f-strings,
//! gray_linear, classification. Absent values are written as `-`; the
//! f-strings are joined by `;`.

use std::fmt;
use std::str::FromStr;

use crate::algebra::PolyZ4;
use crate::distance::Outcome;

use super::CatalogError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Construction {
    CyclicFree,
    CyclicNonFree,
    QcFree,
    QcNonFree,
}

impl Construction {
    pub fn is_qc(self) -> bool {
        matches!(self, Construction::QcFree | Construction::QcNonFree)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Construction::CyclicFree => "cyclic-free",
            Construction::CyclicNonFree => "cyclic-nonfree",
            Construction::QcFree => "qc-free",
            Construction::QcNonFree => "qc-nonfree",
        }
    }
}

impl FromStr for Construction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "cyclic-free" => Construction::CyclicFree,
            "cyclic-nonfree" => Construction::CyclicNonFree,
            "qc-free" => Construction::QcFree,
            "qc-nonfree" => Construction::QcNonFree,
            _ => return Err(format!("unknown construction {s:?}")),
        })
    }
}

/// Standing of a code's Gray image against the best known binary linear
/// code with the same length and dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Classification {
    None,
    Decent,
    Good,
    VeryGood,
    Great,
    /// A linear Gray image beating the upper bound: a table error or a bug.
    Inconsistent,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::None => "none",
            Classification::Decent => "decent",
            Classification::Good => "good",
            Classification::VeryGood => "very_good",
            Classification::Great => "great",
            Classification::Inconsistent => "inconsistent",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Classification {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "none" => Classification::None,
            "decent" => Classification::Decent,
            "good" => Classification::Good,
            "very_good" => Classification::VeryGood,
            "great" => Classification::Great,
            "inconsistent" => Classification::Inconsistent,
            _ => return Err(format!("unknown classification {s:?}")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodeRecord {
    pub n: usize,
    pub k1: usize,
    pub k2: usize,
    pub d: Outcome,
    pub construction: Construction,
    pub m: Option<usize>,
    pub ell: Option<usize>,
    pub g_string: String,
    pub f_strings: Vec<String>,
    pub gray_linear: bool,
    pub classification: Option<Classification>,
}

impl CodeRecord {
    pub fn key(&self) -> (usize, usize, usize) {
        (self.n, self.k1, self.k2)
    }

    pub fn exact_d(&self) -> Option<u32> {
        self.d.exact()
    }

    /// Parameters (length, dimension, distance) of the binary Gray image.
    pub fn gray_params(&self) -> (usize, usize, Option<u32>) {
        (2 * self.n, 2 * self.k1 + self.k2, self.exact_d())
    }

    /// Checks the arithmetic and provenance invariants of a record.
    pub fn validate(&self) -> Result<(), String> {
        if self.n == 0 {
            return Err("length must be positive".into());
        }
        if self.k1 + self.k2 == 0 || self.k1 + self.k2 > self.n {
            return Err(format!("type 4^{} 2^{} impossible at length {}", self.k1, self.k2, self.n));
        }
        if let Some(d) = self.exact_d() {
            if d == 0 || d as usize > 2 * self.n {
                return Err(format!("Lee distance {d} out of range for length {}", self.n));
            }
        }
        match (self.construction.is_qc(), self.m, self.ell) {
            (true, Some(m), Some(ell)) => {
                if m * ell != self.n {
                    return Err(format!("m * ell = {m} * {ell} does not equal n = {}", self.n));
                }
                if self.f_strings.len() != ell {
                    return Err(format!("{} multipliers for index {ell}", self.f_strings.len()));
                }
            }
            (true, _, _) => return Err("QC record without m and ell".into()),
            (false, None, None) => {
                if !self.f_strings.is_empty() {
                    return Err("cyclic record with multipliers".into());
                }
            }
            (false, _, _) => return Err("cyclic record with QC parameters".into()),
        }
        for s in std::iter::once(&self.g_string).chain(&self.f_strings) {
            PolyZ4::parse(s).map_err(|e| e.to_string())?;
        }
        Ok(())
    }

    pub fn to_line(&self) -> String {
        let opt = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
        let d = match self.d {
            Outcome::Exact(d) => d.to_string(),
            Outcome::TimedOut => "timed-out".into(),
            Outcome::Skipped => "skipped".into(),
        };
        let fs = if self.f_strings.is_empty() { "-".into() } else { self.f_strings.join(";") };
        let class = self.classification.map_or("-", Classification::as_str);
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.n,
            self.k1,
            self.k2,
            d,
            self.construction.as_str(),
            opt(self.m),
            opt(self.ell),
            self.g_string,
            fs,
            self.gray_linear,
            class
        )
    }

    /// Parses one record line. `line_no` is only used in error messages.
    pub fn from_line(line: &str, line_no: usize) -> Result<Self, CatalogError> {
        let err = |msg: String| CatalogError::Parse { line: line_no, msg };
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 11 {
            return Err(err(format!("expected 11 tab-separated fields, found {}", fields.len())));
        }
        let num = |s: &str, what: &str| s.parse::<usize>().map_err(|_| err(format!("bad {what} {s:?}")));
        let opt_num = |s: &str, what: &str| if s == "-" { Ok(None) } else { num(s, what).map(Some) };
        let d = match fields[3] {
            "timed-out" => Outcome::TimedOut,
            "skipped" => Outcome::Skipped,
            s => Outcome::Exact(s.parse().map_err(|_| err(format!("bad distance {s:?}")))?),
        };
        let f_strings = match fields[8] {
            "-" => Vec::new(),
            s => s.split(';').map(str::to_string).collect(),
        };
        let gray_linear = match fields[9] {
            "true" => true,
            "false" => false,
            s => return Err(err(format!("bad gray_linear flag {s:?}"))),
        };
        let classification = match fields[10] {
            "-" => None,
            s => Some(s.parse().map_err(err)?),
        };
        let rec = CodeRecord {
            n: num(fields[0], "n")?,
            k1: num(fields[1], "k1")?,
            k2: num(fields[2], "k2")?,
            d,
            construction: fields[4].parse().map_err(err)?,
            m: opt_num(fields[5], "m")?,
            ell: opt_num(fields[6], "ell")?,
            g_string: fields[7].to_string(),
            f_strings,
            gray_linear,
            classification,
        };
        rec.validate().map_err(|msg| CatalogError::Validation(format!("line {line_no}: {msg}")))?;
        Ok(rec)
    }
}

/// Parses a records file: one record per line; blank lines and lines
/// starting with `#` are ignored.
pub fn parse_records(text: &str) -> Result<Vec<CodeRecord>, CatalogError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, l)| CodeRecord::from_line(l, i + 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sample() -> CodeRecord {
        CodeRecord {
            n: 22,
            k1: 10,
            k2: 0,
            d: Outcome::Exact(12),
            construction: Construction::QcFree,
            m: Some(11),
            ell: Some(2),
            g_string: "31".into(),
            f_strings: vec!["2101311121".into(), "1123112011".into()],
            gray_linear: false,
            classification: Some(Classification::Decent),
        }
    }

    #[test]
    fn line_round_trip() {
        let r = sample();
        let line = r.to_line();
        assert_eq!(line, "22\t10\t0\t12\tqc-free\t11\t2\t31\t2101311121;1123112011\tfalse\tdecent");
        assert_eq!(CodeRecord::from_line(&line, 1).unwrap(), r);

        let cyc = "31\t26\t0\tskipped\tcyclic-free\t-\t-\t323001\t-\tfalse\t-";
        let c = CodeRecord::from_line(cyc, 1).unwrap();
        assert_eq!(c.d, Outcome::Skipped);
        assert_eq!(c.classification, None);
        assert_eq!(c.to_line(), cyc);
    }

    #[test]
    fn invalid_records_are_rejected() {
        let bad = [
            "22\t10\t0\t12\tqc-free\t11\t3\t31\t2101311121;1123112011\tfalse\t-",
            "22\t20\t3\t12\tcyclic-free\t-\t-\t31\t-\tfalse\t-",
            "22\t10\t0\t45\tcyclic-free\t-\t-\t31\t-\tfalse\t-",
            "22\t10\t0\t4\tcyclic-free\t-\t-\t35\t-\tfalse\t-",
            "22\t10\t0\t4\tcyclic-free\t-\t-\t31\t-\tmaybe\t-",
            "22\t10\t0\t4\tcyclic-free\t-\t-\t31\t-\tfalse",
        ];
        for l in bad {
            assert!(CodeRecord::from_line(l, 7).is_err(), "{l}");
        }
    }

    #[test]
    fn gray_image_parameters() {
        assert_eq!(sample().gray_params(), (44, 20, Some(12)));
    }
}
