//! Permutations of `{1..n}` and the disjoint-cycle text format.
//!
//! Points are stored 0-based; everything that reads or writes text is 1-based.
//!
//! Products are read left to right: `p * q` applies `p` first and then `q`,
//! so `(p * q).apply(i) == q.apply(p.apply(i))`. With this rule the
//! commutator `r * u * r^-1 * u^-1` of the 8-square surface in H(2,2) is
//! `(2,4,5)(3,8,6)`; the opposite rule gives a conjugate with other labels.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking that they form a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self, String> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(format!("{images:?} is not a permutation of 0..{n}"));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Transposition or cycle helper for tests and fixtures, 1-based labels.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, String> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 || p > n || seen[p - 1] {
                    return Err(format!("bad point {p} in cycle {cycle:?}"));
                }
                seen[p - 1] = true;
                images[p - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.images[i] == i).collect()
    }

    /// Cycles including fixed points, each starting at its smallest point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.images[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.images[j];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths in non-increasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// Relabels points through `sigma`: the result maps `sigma(i)` to `sigma(self(i))`.
    pub fn relabel(&self, sigma: &Permutation) -> Self {
        let mut images = vec![0; self.degree()];
        for i in 0..self.degree() {
            images[sigma.apply(i)] = sigma.apply(self.images[i]);
        }
        Permutation { images }
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        (0..self.degree()).all(|i| self.images[other.images[i]] == other.images[self.images[i]])
    }

    /// Parses disjoint-cycle notation over `{1..n}`; omitted points are fixed.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self, ParseError> {
        let cycles = parse_cycle_list(text)?;
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in &cycles {
            for (k, &(p, pos)) in cycle.iter().enumerate() {
                if p == 0 || p > n {
                    return Err(ParseError::new(
                        pos,
                        p.to_string(),
                        format!("point out of range 1..={n}"),
                    ));
                }
                if seen[p - 1] {
                    return Err(ParseError::new(pos, p.to_string(), "repeated point"));
                }
                seen[p - 1] = true;
                images[p - 1] = cycle[(k + 1) % cycle.len()].0 - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// Largest point mentioned in a cycle string (0 when there is none).
    pub fn max_point(text: &str) -> Result<usize, ParseError> {
        Ok(parse_cycle_list(text)?
            .iter()
            .flatten()
            .map(|&(p, _)| p)
            .max()
            .unwrap_or(0))
    }
}

type Cycle = Vec<(usize, usize)>;

/// Tokenizes `(1,2,3)(4,5)` into cycles of `(point, byte offset)`.
fn parse_cycle_list(text: &str) -> Result<Vec<Cycle>, ParseError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut cycles = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        if i >= bytes.len() {
            break;
        }
        if bytes[i] != b'(' {
            return Err(ParseError::new(i, token_at(text, i), "expected '('"));
        }
        let open = i;
        i += 1;
        let mut cycle = Vec::new();
        loop {
            skip_ws(&mut i);
            if i >= bytes.len() {
                return Err(ParseError::new(open, "(", "unclosed parenthesis"));
            }
            if bytes[i] == b')' {
                i += 1;
                break;
            }
            if !cycle.is_empty() {
                if bytes[i] == b',' {
                    i += 1;
                    skip_ws(&mut i);
                } else if !bytes[i].is_ascii_digit() {
                    return Err(ParseError::new(i, token_at(text, i), "expected ',' or ')'"));
                }
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(ParseError::new(i, token_at(text, i), "expected a point"));
            }
            let p: usize = text[start..i]
                .parse()
                .map_err(|_| ParseError::new(start, &text[start..i], "point too large"))?;
            if cycle.iter().any(|&(q, _)| q == p) {
                return Err(ParseError::new(start, p.to_string(), "repeated point"));
            }
            cycle.push((p, start));
        }
        cycles.push(cycle);
    }
    // repeated points across cycles
    let mut all: Vec<(usize, usize)> = cycles.iter().flatten().copied().collect();
    all.sort_by_key(|&(p, pos)| (p, pos));
    for w in all.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(ParseError::new(w[1].1, w[1].0.to_string(), "repeated point"));
        }
    }
    Ok(cycles)
}

fn token_at(text: &str, pos: usize) -> String {
    text[pos..].chars().take(1).collect()
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl Mul for Permutation {
    type Output = Permutation;
    fn mul(self, rhs: Permutation) -> Permutation {
        self.then(&rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[n={}]", self.degree())
    }
}

// Serialized as "n:cycles" so the degree survives trailing fixed points.
impl From<Permutation> for String {
    fn from(p: Permutation) -> String {
        format!("{}:{}", p.degree(), p)
    }
}

impl TryFrom<String> for Permutation {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        let (n, cycles) = s.split_once(':').ok_or("missing degree prefix")?;
        let n: usize = n.parse().map_err(|e| format!("{e}"))?;
        let cycles = if cycles == "()" { "" } else { cycles };
        Permutation::parse_cycles(cycles, n).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_s3_r() {
        let r = Permutation::parse_cycles("(1,2,3,4)(5,6,7,8)", 8).unwrap();
        assert_eq!(r.images(), &[1, 2, 3, 0, 5, 6, 7, 4]);
        assert_eq!(r.to_string(), "(1,2,3,4)(5,6,7,8)");
    }

    #[test]
    fn empty_product_is_identity() {
        let p = Permutation::parse_cycles("", 5).unwrap();
        assert!(p.is_identity());
        assert_eq!(p.degree(), 5);
        assert_eq!(p.to_string(), "()");
        assert!(Permutation::parse_cycles("()", 3).unwrap().is_identity());
    }

    #[test]
    fn omitted_point_is_fixed() {
        let p = Permutation::parse_cycles("(1,2)", 3).unwrap();
        assert_eq!(p.images(), &[1, 0, 2]);
    }

    #[test]
    fn whitespace_and_singletons() {
        let p = Permutation::parse_cycles(" (1, 2) (3)  ", 3).unwrap();
        assert_eq!(p.images(), &[1, 0, 2]);
    }

    #[test]
    fn parse_errors_name_token_and_position() {
        let e = Permutation::parse_cycles("(1,2)(2,3)", 3).unwrap_err();
        assert_eq!((e.position, e.token.as_str()), (6, "2"));
        assert!(e.message.contains("repeated"));

        let e = Permutation::parse_cycles("(1,9)", 4).unwrap_err();
        assert_eq!((e.position, e.token.as_str()), (3, "9"));
        assert!(e.message.contains("range"));

        let e = Permutation::parse_cycles("(1,2", 4).unwrap_err();
        assert!(e.message.contains("unclosed"));

        let e = Permutation::parse_cycles("1,2)", 4).unwrap_err();
        assert_eq!(e.position, 0);

        let e = Permutation::parse_cycles("(1;2)", 4).unwrap_err();
        assert_eq!((e.position, e.token.as_str()), (2, ";"));

        let e = Permutation::parse_cycles("(1,1)", 4).unwrap_err();
        assert_eq!(e.position, 3);
    }

    #[test]
    fn left_to_right_products() {
        let a = Permutation::parse_cycles("(1,2)", 3).unwrap();
        let b = Permutation::parse_cycles("(2,3)", 3).unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!((&a * &b).apply(0), 2);
        assert_eq!((&a * &b).to_string(), "(1,3,2)");
    }

    #[test]
    fn inverse_and_order() {
        let p = Permutation::parse_cycles("(1,2,3)(4,5)", 6).unwrap();
        assert!((&p * &p.inverse()).is_identity());
        assert_eq!(p.order(), 6);
        assert_eq!(p.cycle_type(), vec![3, 2, 1]);
    }

    #[test]
    fn serde_string_form() {
        let p = Permutation::parse_cycles("(1,2)", 4).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "\"4:(1,2)\"");
        let q: Permutation = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
