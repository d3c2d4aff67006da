//! Integer 2×2 matrices of determinant one and words in the shears
//! `L = [[1,1],[0,1]]` and `R = [[1,0],[1,1]]`.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sl2Matrix {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl Sl2Matrix {
    pub const IDENTITY: Sl2Matrix = Sl2Matrix { a: 1, b: 0, c: 0, d: 1 };
    pub const L: Sl2Matrix = Sl2Matrix { a: 1, b: 1, c: 0, d: 1 };
    pub const R: Sl2Matrix = Sl2Matrix { a: 1, b: 0, c: 1, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a * d - b * c;
        if det != 1 {
            return Err(Error::NotSl2 { a, b, c, d, det });
        }
        Ok(Sl2Matrix { a, b, c, d })
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    pub fn inverse(&self) -> Sl2Matrix {
        Sl2Matrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn pow(&self, e: i64) -> Sl2Matrix {
        let base = if e < 0 { self.inverse() } else { *self };
        let mut acc = Sl2Matrix::IDENTITY;
        for _ in 0..e.unsigned_abs() {
            acc = acc * base;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == Sl2Matrix::IDENTITY
    }

    /// Writes the matrix as a word in `L^±1`, `R^±1` by the Euclidean algorithm
    /// on the first column. `-I` is written as `(L^-1 R L^-1)^2`.
    pub fn decompose(&self) -> Word {
        let (mut a, mut b, mut c, mut d) = (self.a, self.b, self.c, self.d);
        // steps applied on the left, in order
        let mut applied: Vec<(Letter, i64)> = Vec::new();
        while c != 0 {
            if a == 0 {
                // left-multiply by L: first row += second row
                a += c;
                b += d;
                applied.push((Letter::L, 1));
            } else if a.abs() > c.abs() {
                let q = a / c;
                a -= q * c;
                b -= q * d;
                applied.push((Letter::L, -q));
            } else {
                let q = c / a;
                c -= q * a;
                d -= q * b;
                applied.push((Letter::R, -q));
            }
        }
        // self = E_1^-1 ... E_k^-1 * [[a,b],[0,a]]
        let mut runs: Vec<(Letter, i64)> = applied.into_iter().map(|(l, e)| (l, -e)).collect();
        if a == 1 {
            runs.push((Letter::L, b));
        } else {
            // [[-1,b],[0,-1]] = -I * L^-b
            runs.extend(minus_identity_word());
            runs.push((Letter::L, -b));
        }
        Word::from_runs(runs)
    }
}

fn minus_identity_word() -> Vec<(Letter, i64)> {
    vec![
        (Letter::L, -1),
        (Letter::R, 1),
        (Letter::L, -2),
        (Letter::R, 1),
        (Letter::L, -1),
    ]
}

impl Mul for Sl2Matrix {
    type Output = Sl2Matrix;

    fn mul(self, o: Sl2Matrix) -> Sl2Matrix {
        Sl2Matrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

impl Neg for Sl2Matrix {
    type Output = Sl2Matrix;

    fn neg(self) -> Sl2Matrix {
        Sl2Matrix { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }
}

impl fmt::Display for Sl2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    L,
    R,
}

impl Letter {
    pub fn matrix(self) -> Sl2Matrix {
        match self {
            Letter::L => Sl2Matrix::L,
            Letter::R => Sl2Matrix::R,
        }
    }

    pub fn other(self) -> Letter {
        match self {
            Letter::L => Letter::R,
            Letter::R => Letter::L,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::L => "L",
            Letter::R => "R",
        })
    }
}

/// A word in `L`, `R` and their inverses, stored run-length with nonzero
/// signed exponents and no two adjacent runs on the same letter.
///
/// The word `w1 w2 ... wk` denotes the matrix product in that order; acting
/// on an origami, the rightmost letter acts first.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    runs: Vec<(Letter, i64)>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn from_runs(runs: impl IntoIterator<Item = (Letter, i64)>) -> Self {
        let mut out: Vec<(Letter, i64)> = Vec::new();
        for (l, e) in runs {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((last, x)) if *last == l => {
                    *x += e;
                    if *x == 0 {
                        out.pop();
                    }
                }
                _ => out.push((l, e)),
            }
        }
        Word { runs: out }
    }

    pub fn letter(l: Letter) -> Self {
        Word { runs: vec![(l, 1)] }
    }

    pub fn runs(&self) -> &[(Letter, i64)] {
        &self.runs
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Number of elementary letters.
    pub fn length(&self) -> u64 {
        self.runs.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.runs.iter().all(|&(_, e)| e > 0)
    }

    pub fn matrix(&self) -> Sl2Matrix {
        self.runs
            .iter()
            .fold(Sl2Matrix::IDENTITY, |acc, &(l, e)| acc * l.matrix().pow(e))
    }

    pub fn inverse(&self) -> Word {
        Word::from_runs(self.runs.iter().rev().map(|&(l, e)| (l, -e)))
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_runs(self.runs.iter().chain(other.runs.iter()).copied())
    }

    pub fn pow(&self, k: usize) -> Word {
        Word::from_runs(std::iter::repeat_n(self.runs.iter().copied(), k).flatten())
    }

    /// Cyclic rotation by `k` runs.
    pub fn rotate(&self, k: usize) -> Word {
        if self.runs.is_empty() {
            return self.clone();
        }
        let k = k % self.runs.len();
        Word::from_runs(self.runs[k..].iter().chain(self.runs[..k].iter()).copied())
    }

    /// Elementary steps with sign, rightmost first (action order).
    pub fn steps_action_order(&self) -> impl Iterator<Item = (Letter, bool)> + '_ {
        self.runs
            .iter()
            .rev()
            .flat_map(|&(l, e)| std::iter::repeat_n((l, e > 0), e.unsigned_abs() as usize))
    }

    /// Parses run-length text such as `L8R2L2R2`, `L^-1 R`, or `1` for the
    /// empty word. Zero exponents are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let bytes = text.as_bytes();
        let mut runs = Vec::new();
        let mut i = 0;
        let trimmed = text.trim();
        if trimmed == "1" || trimmed == "I" || trimmed.is_empty() {
            return Ok(Word::empty());
        }
        while i < bytes.len() {
            let c = bytes[i];
            if c.is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let letter = match c {
                b'L' => Letter::L,
                b'R' => Letter::R,
                _ => {
                    return Err(ParseError::new(i, (c as char).to_string(), "expected L or R").into())
                }
            };
            let start = i;
            i += 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
            }
            let num_start = i;
            if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
                i += 1;
            }
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let num = &text[num_start..i];
            let e: i64 = if num.is_empty() {
                1
            } else {
                num.parse()
                    .map_err(|_| ParseError::new(num_start, num, "bad exponent"))?
            };
            if e == 0 {
                return Err(ParseError::new(start, &text[start..i], "zero exponent").into());
            }
            runs.push((letter, e));
        }
        Ok(Word::from_runs(runs))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return f.write_str("1");
        }
        for &(l, e) in &self.runs {
            if e == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{l}{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Word::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi1_trace() {
        let w = Word::parse("L8R2L2R2").unwrap();
        assert_eq!(w.matrix(), Sl2Matrix::new(101, 42, 12, 5).unwrap());
        assert_eq!(w.matrix().trace(), 106);
        assert_eq!(w.to_string(), "L8R2L2R2");
    }

    #[test]
    fn s_has_order_four() {
        let s = Word::parse("L-1RL-1").unwrap().matrix();
        assert_eq!(s, Sl2Matrix::new(0, -1, 1, 0).unwrap());
        assert_eq!(s * s, -Sl2Matrix::IDENTITY);
        let u = Word::parse("L-1R").unwrap().matrix();
        assert!(u.pow(6).is_identity());
        assert!(!u.pow(3).is_identity());
    }

    #[test]
    fn decompose_roundtrip() {
        for a in -6..=6 {
            for b in -6..=6 {
                for c in -6..=6 {
                    for d in -6..=6 {
                        if let Ok(m) = Sl2Matrix::new(a, b, c, d) {
                            assert_eq!(m.decompose().matrix(), m, "{m}");
                        }
                    }
                }
            }
        }
        assert!(Sl2Matrix::IDENTITY.decompose().is_empty());
    }

    #[test]
    fn rejects_bad_determinant() {
        assert!(matches!(Sl2Matrix::new(1, 1, 1, 1), Err(Error::NotSl2 { det: 0, .. })));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Word::parse("L^-1 R").unwrap().to_string(), "L-1R");
        assert_eq!(Word::parse("LLR").unwrap().to_string(), "L2R");
        assert!(Word::parse("L0R2").is_err());
        assert!(Word::parse("X2").is_err());
        assert!(Word::parse("1").unwrap().is_empty());
        assert_eq!(Word::parse("L2L-2").unwrap(), Word::empty());
    }

    #[test]
    fn inverse_word() {
        let w = Word::parse("L3R-2L").unwrap();
        assert!(w.concat(&w.inverse()).is_empty());
        assert!((w.matrix() * w.inverse().matrix()).is_identity());
    }
}
