//! Integer polynomials: text I/O, Sturm sequences, discriminants, factorization
//! patterns modulo primes, and an exact irreducibility test.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::linalg::{QMatrix, Q};

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Monic integer polynomial from rational coefficients (constant term first).
    pub fn from_rational(coeffs: &[Q]) -> Result<Self> {
        let mut out = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if !c.is_integer() {
                return Err(Error::NonIntegralCharPoly(crate::linalg::q_to_string(c)));
            }
            out.push(c.numer().clone());
        }
        Ok(IntPolynomial::new(out))
    }

    pub fn charpoly(m: &QMatrix) -> Result<Self> {
        IntPolynomial::from_rational(&m.charpoly())
    }

    pub fn x() -> Self {
        IntPolynomial::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has degree 0 here.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        let sign = if self.leading().is_negative() { -BigInt::one() } else { BigInt::one() };
        IntPolynomial::new(self.coeffs.iter().map(|x| x / &c * &sign).collect())
    }

    pub fn is_reciprocal(&self) -> bool {
        let n = self.coeffs.len();
        (0..n).all(|k| self.coeffs[k] == self.coeffs[n - 1 - k])
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_q(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + Q::from_integer(c.clone()))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn mul(&self, o: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || o.is_zero() {
            return IntPolynomial::new(vec![]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn pow(&self, k: u32) -> IntPolynomial {
        (0..k).fold(IntPolynomial::from_i64(&[1]), |acc, _| acc.mul(self))
    }

    /// Exact quotient over Z, if `d` divides `self`.
    pub fn div_exact(&self, d: &IntPolynomial) -> Option<IntPolynomial> {
        let (qq, r) = qpoly::divmod(&self.to_q(), &d.to_q());
        if !qpoly::is_zero(&r) || qq.iter().any(|c| !c.is_integer()) {
            return None;
        }
        Some(IntPolynomial::new(qq.into_iter().map(|c| c.numer().clone()).collect()))
    }

    pub fn to_q(&self) -> Vec<Q> {
        self.coeffs.iter().map(|c| Q::from_integer(c.clone())).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        let g = qpoly::gcd(&self.to_q(), &self.derivative().to_q());
        qpoly::degree(&g) == 0
    }

    /// Number of distinct real roots, by Sturm's theorem.
    pub fn sturm_real_root_count(&self) -> usize {
        if self.degree() == 0 {
            return 0;
        }
        let mut seq = vec![self.to_q(), self.derivative().to_q()];
        while !qpoly::is_zero(seq.last().expect("nonempty")) {
            let k = seq.len();
            let (_, r) = qpoly::divmod(&seq[k - 2], &seq[k - 1]);
            seq.push(r.into_iter().map(|c| -c).collect());
            let last = seq.last_mut().expect("nonempty");
            qpoly::trim(last);
        }
        seq.pop();
        let changes = |signs: Vec<i32>| {
            let nz: Vec<i32> = signs.into_iter().filter(|&s| s != 0).collect();
            nz.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let at_pos: Vec<i32> = seq.iter().map(|p| sign_of(p.last().expect("nonzero"))).collect();
        let at_neg: Vec<i32> = seq
            .iter()
            .map(|p| {
                let s = sign_of(p.last().expect("nonzero"));
                if (p.len() - 1) % 2 == 0 { s } else { -s }
            })
            .collect();
        changes(at_neg) - changes(at_pos)
    }

    /// True iff every complex root is real; the polynomial must be squarefree.
    pub fn totally_real(&self) -> Result<bool> {
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree(self.to_string()));
        }
        Ok(self.sturm_real_root_count() == self.degree())
    }

    /// Resultant by the Sylvester determinant.
    pub fn resultant(&self, o: &IntPolynomial) -> BigInt {
        let (m, n) = (self.degree(), o.degree());
        let size = m + n;
        if size == 0 {
            return BigInt::one();
        }
        let mut s = QMatrix::zeros(size, size);
        for row in 0..n {
            for (k, c) in self.coeffs.iter().rev().enumerate() {
                s[(row, row + k)] = Q::from_integer(c.clone());
            }
        }
        for row in 0..m {
            for (k, c) in o.coeffs.iter().rev().enumerate() {
                s[(n + row, row + k)] = Q::from_integer(c.clone());
            }
        }
        s.determinant().to_integer()
    }

    pub fn discriminant(&self) -> BigInt {
        let n = self.degree();
        let r = self.resultant(&self.derivative());
        let sign = if (n * (n.saturating_sub(1)) / 2).is_multiple_of(2) { 1 } else { -1 };
        r * BigInt::from(sign) / self.leading()
    }

    pub fn mod_p(&self, p: u64) -> Vec<u64> {
        let bp = BigInt::from(p);
        let mut v: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| c.mod_floor(&bp).to_u64().expect("reduced"))
            .collect();
        fp::trim(&mut v);
        v
    }

    /// Degrees of the irreducible factors modulo `p`, sorted decreasingly, or
    /// `None` when `p` divides the leading coefficient or the reduction is not squarefree.
    pub fn factor_pattern_mod(&self, p: u64) -> Option<Vec<usize>> {
        let f = self.mod_p(p);
        if f.len() != self.coeffs.len() {
            return None;
        }
        let df = fp::derivative(&f, p);
        if fp::degree(&fp::gcd(&f, &df, p)) != 0 {
            return None;
        }
        Some(fp::distinct_degree_pattern(&f, p))
    }

    /// Exact irreducibility over Q (of the primitive part; constants are not irreducible).
    pub fn is_irreducible(&self) -> bool {
        let p = self.primitive_part();
        let n = p.degree();
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        if !p.is_squarefree() {
            return false;
        }
        let candidates = p.possible_factor_degrees(40);
        for d in candidates.into_iter().filter(|&d| d <= n / 2) {
            if p.find_factor_of_degree(d).is_some() {
                return false;
            }
        }
        true
    }

    /// Degrees `1..n-1` still allowed for a factor after `primes` good primes.
    pub fn possible_factor_degrees(&self, primes: usize) -> BTreeSet<usize> {
        let n = self.degree();
        let mut allowed: BTreeSet<usize> = (1..n).collect();
        for p in primes_from(3).filter_map(|p| self.factor_pattern_mod(p)).take(primes) {
            let sums = subset_sums(&p);
            allowed.retain(|d| sums.contains(d));
            if allowed.is_empty() {
                break;
            }
        }
        allowed
    }

    /// Kronecker's method: interpolate candidate factors through divisors of values.
    fn find_factor_of_degree(&self, d: usize) -> Option<IntPolynomial> {
        // evaluation points with small nonzero values
        let mut pts: Vec<(BigInt, BigInt)> = Vec::new();
        for x in (-30i64..=30).map(BigInt::from) {
            let v = self.eval(&x);
            if v.is_zero() {
                // rational root at an integer point
                let lin = IntPolynomial::new(vec![-x.clone(), BigInt::one()]);
                return if d == 1 { Some(lin) } else { None };
            }
            pts.push((x, v));
        }
        pts.sort_by_key(|(_, v)| divisors(v).len());
        let pts: Vec<(BigInt, BigInt)> = pts.into_iter().take(d + 1).collect();
        let divs: Vec<Vec<BigInt>> = pts
            .iter()
            .map(|(_, v)| {
                let pos = divisors(v);
                pos.iter().cloned().chain(pos.iter().map(|x| -x)).collect()
            })
            .collect();
        let lead = self.leading();
        let mut idx = vec![0usize; d + 1];
        loop {
            let ys: Vec<Q> = idx.iter().enumerate().map(|(k, &i)| Q::from_integer(divs[k][i].clone())).collect();
            let xs: Vec<Q> = pts.iter().map(|(x, _)| Q::from_integer(x.clone())).collect();
            let g = qpoly::interpolate(&xs, &ys);
            if qpoly::degree(&g) == d && g.iter().all(|c| c.is_integer()) {
                let gi = IntPolynomial::new(g.iter().map(|c| c.numer().clone()).collect());
                if lead.is_multiple_of(&gi.leading()) && self.div_exact(&gi).is_some() {
                    return Some(gi);
                }
            }
            // odometer
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return None;
                }
                idx[k] += 1;
                if idx[k] < divs[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_poly(text)
    }
}

fn sign_of(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn subset_sums(parts: &[usize]) -> BTreeSet<usize> {
    let mut s: BTreeSet<usize> = [0].into_iter().collect();
    for &p in parts {
        let add: Vec<usize> = s.iter().map(|x| x + p).collect();
        s.extend(add);
    }
    s
}

fn divisors(v: &BigInt) -> Vec<BigInt> {
    let v = v.abs();
    let mut out = Vec::new();
    let mut small = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= v {
        if (&v % &d).is_zero() {
            small.push(d.clone());
            let other = &v / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out.reverse();
    small.extend(out);
    small
}

/// Primes `>= start` in increasing order.
pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start.max(2)..).filter(|&k| is_prime_u64(k))
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = fp::pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = fp::mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn parse_poly(text: &str) -> Result<IntPolynomial> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut coeffs: Vec<BigInt> = Vec::new();
    let ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    let mut first = true;
    loop {
        ws(&mut i);
        if i >= bytes.len() {
            break;
        }
        let mut sign = BigInt::one();
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
            ws(&mut i);
        } else if !first {
            return Err(ParseError::new(i, (bytes[i] as char).to_string(), "expected '+' or '-'").into());
        }
        first = false;
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let mut coef = if i > start {
            text[start..i].parse::<BigInt>().expect("digits")
        } else {
            BigInt::one()
        };
        let had_number = i > start;
        ws(&mut i);
        let mut power = 0usize;
        let has_star = i < bytes.len() && bytes[i] == b'*';
        if has_star {
            if !had_number {
                return Err(ParseError::new(i, "*", "'*' without a coefficient").into());
            }
            i += 1;
            ws(&mut i);
        }
        if i < bytes.len() && bytes[i] == b'x' {
            if had_number && !has_star {
                return Err(ParseError::new(i, "x", "expected '*' between coefficient and 'x'").into());
            }
            i += 1;
            power = 1;
            ws(&mut i);
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                ws(&mut i);
                let ps = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ps == i {
                    return Err(ParseError::new(ps, "", "expected an exponent").into());
                }
                power = text[ps..i].parse().map_err(|_| ParseError::new(ps, &text[ps..i], "bad exponent"))?;
            }
        } else if has_star || !had_number {
            let tok = if i < bytes.len() { (bytes[i] as char).to_string() } else { String::new() };
            return Err(ParseError::new(i, tok, "expected 'x' or a number").into());
        }
        coef *= sign;
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigInt::zero());
        }
        coeffs[power] += coef;
    }
    if first {
        return Err(ParseError::new(0, "", "empty polynomial").into());
    }
    Ok(IntPolynomial::new(coeffs))
}

impl FromStr for IntPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            match (mag.is_one(), k) {
                (_, 0) => write!(f, "{mag}")?,
                (true, _) => f.write_str(&var)?,
                (false, _) => write!(f, "{mag}*{var}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_poly(&s).map_err(serde::de::Error::custom)
    }
}

/// Polynomials over Q as coefficient vectors, constant term first.
pub(crate) mod qpoly {
    use super::Q;
    use num_traits::{One, Zero};

    pub fn trim(p: &mut Vec<Q>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn is_zero(p: &[Q]) -> bool {
        p.iter().all(|c| c.is_zero())
    }

    pub fn degree(p: &[Q]) -> usize {
        p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn divmod(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        assert!(!b.is_empty(), "division by zero polynomial");
        let db = b.len() - 1;
        let lb = b[db].clone();
        let mut q = vec![Q::zero(); r.len().saturating_sub(db).max(1)];
        while r.len() > db && !r.is_empty() {
            let k = r.len() - 1 - db;
            let c = &r[r.len() - 1] / &lb;
            for (j, bj) in b.iter().enumerate() {
                let v = &r[k + j] - &c * bj;
                r[k + j] = v;
            }
            q[k] = c;
            r.pop();
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub fn gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let (_, r) = divmod(&x, &y);
            x = y;
            y = r;
        }
        if let Some(l) = x.last().cloned() {
            for c in x.iter_mut() {
                *c = &*c / &l;
            }
        }
        x
    }

    /// Lagrange interpolation through `(xs[i], ys[i])`.
    pub fn interpolate(xs: &[Q], ys: &[Q]) -> Vec<Q> {
        let n = xs.len();
        let mut out = vec![Q::zero(); n];
        for i in 0..n {
            let mut basis = vec![Q::one()];
            let mut denom = Q::one();
            for j in 0..n {
                if i == j {
                    continue;
                }
                let mut next = vec![Q::zero(); basis.len() + 1];
                for (k, c) in basis.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * &xs[j];
                }
                basis = next;
                denom *= &xs[i] - &xs[j];
            }
            let f = &ys[i] / denom;
            for (k, c) in basis.iter().enumerate() {
                out[k] += c * &f;
            }
        }
        out
    }
}

/// Polynomials over F_p as `u64` coefficient vectors, constant term first.
pub(crate) mod fp {
    pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1 % p;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(acc, a, p);
            }
            a = mul_mod(a, a, p);
            e >>= 1;
        }
        acc
    }

    pub fn inv_mod(a: u64, p: u64) -> u64 {
        pow_mod(a, p - 2, p)
    }

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn degree(v: &[u64]) -> usize {
        v.len().saturating_sub(1)
    }

    pub fn derivative(f: &[u64], p: u64) -> Vec<u64> {
        let mut d: Vec<u64> = f.iter().enumerate().skip(1).map(|(k, &c)| mul_mod(c, k as u64 % p, p)).collect();
        trim(&mut d);
        d
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let inv = inv_mod(b[db], p);
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = mul_mod(r[r.len() - 1], inv, p);
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mul_mod(c, bj, p)) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn div(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let inv = inv_mod(b[db], p);
        let mut q = vec![0u64; r.len().saturating_sub(db)];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = mul_mod(r[r.len() - 1], inv, p);
            q[k] = c;
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mul_mod(c, bj, p)) % p;
            }
            r.pop();
        }
        trim(&mut q);
        q
    }

    pub fn mul_rem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        rem(&out, m, p)
    }

    pub fn pow_rem(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = rem(&[1], m, p);
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_rem(&acc, &b, m, p);
            }
            b = mul_rem(&b, &b, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        if let Some(&l) = x.last() {
            let inv = inv_mod(l, p);
            for c in x.iter_mut() {
                *c = mul_mod(*c, inv, p);
            }
        }
        x
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|k| (a.get(k).copied().unwrap_or(0) + p - b.get(k).copied().unwrap_or(0)) % p)
            .collect();
        trim(&mut out);
        out
    }

    /// Degrees of irreducible factors of a squarefree `f`.
    pub fn distinct_degree_pattern(f: &[u64], p: u64) -> Vec<usize> {
        let mut f = f.to_vec();
        let mut out = Vec::new();
        let x = vec![0, 1];
        let mut h = rem(&x, &f, p);
        let mut d = 0;
        while degree(&f) > 0 {
            d += 1;
            if 2 * d > degree(&f) {
                out.push(degree(&f));
                break;
            }
            h = pow_rem(&h, p, &f, p);
            let g = gcd(&f, &sub(&h, &x, p), p);
            let k = degree(&g);
            if k > 0 {
                out.extend(std::iter::repeat_n(d, k / d));
                f = div(&f, &g, p);
                h = rem(&h, &f, p);
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        IntPolynomial::parse(s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let chi1 = p("x^4 - 2*x^3 - 30*x^2 - 2*x + 1");
        assert_eq!(chi1, IntPolynomial::from_i64(&[1, -2, -30, -2, 1]));
        assert_eq!(chi1.to_string(), "x^4 - 2*x^3 - 30*x^2 - 2*x + 1");
        assert_eq!(p("-x + 3").to_string(), "-x + 3");
        assert_eq!(p("x^2+1").to_string(), "x^2 + 1");
        assert!(IntPolynomial::parse("x^").is_err());
        assert!(IntPolynomial::parse("2 x").is_err());
        assert!(IntPolynomial::parse("").is_err());
        assert!(IntPolynomial::parse("x +").is_err());
    }

    #[test]
    fn irreducibility() {
        assert!(p("x^4 - 2*x^3 - 30*x^2 - 2*x + 1").is_irreducible());
        assert!(p("x^4 - 80*x^3 + 1438*x^2 - 80*x + 1").is_irreducible());
        assert!(!p("x^4 - 4*x^3 + 6*x^2 - 4*x + 1").is_irreducible());
        assert!(p("x^2 + 1").is_irreducible());
        // (x^2+x+1)(x^2-x+1): reducible although no rational roots
        assert!(!p("x^4 + x^2 + 1").is_irreducible());
        // x^4 + 1 is irreducible but reducible modulo every prime
        assert!(p("x^4 + 1").is_irreducible());
        // product of two irreducible cubics
        assert!(!p("x^3 - 2").mul(&p("x^3 + 3*x + 5")).is_irreducible());
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(p("x^4 - 2*x^3 - 30*x^2 - 2*x + 1").sturm_real_root_count(), 4);
        assert_eq!(p("x^4 - 80*x^3 + 1438*x^2 - 80*x + 1").sturm_real_root_count(), 4);
        assert_eq!(p("x^2 + 1").sturm_real_root_count(), 0);
        assert_eq!(p("x^3 - x").sturm_real_root_count(), 3);
        assert!(!p("x^2 + 1").totally_real().unwrap());
        assert!(matches!(p("x^2 - 2*x + 1").totally_real(), Err(Error::NotSquarefree(_))));
    }

    #[test]
    fn discriminants() {
        assert_eq!(p("x^2 - 5").discriminant(), BigInt::from(20));
        assert_eq!(p("x^3 - 2").discriminant(), BigInt::from(-108));
        // 2^12 * 3^3 * 11^2
        assert_eq!(p("x^4 - 2*x^3 - 30*x^2 - 2*x + 1").discriminant(), BigInt::from(13381632));
    }

    #[test]
    fn patterns_mod_p() {
        let f = p("x^4 + 1");
        for q in [3u64, 5, 7, 11, 13] {
            let pat = f.factor_pattern_mod(q).unwrap();
            assert!(pat.iter().all(|&d| d <= 2), "{q}: {pat:?}");
        }
        assert_eq!(p("x^2 + 1").factor_pattern_mod(5).unwrap(), vec![1, 1]);
        assert_eq!(p("x^2 + 1").factor_pattern_mod(7).unwrap(), vec![2]);
        assert!(p("x^2 + 1").factor_pattern_mod(2).is_none());
    }

    #[test]
    fn charpoly_integrality() {
        use crate::linalg::{q_frac, QMatrix};
        let m = QMatrix::from_rows(vec![vec![q_frac(1, 2), q_frac(0, 1)], vec![q_frac(0, 1), q_frac(2, 1)]]);
        assert!(matches!(IntPolynomial::charpoly(&m), Err(Error::NonIntegralCharPoly(_))));
        let id = IntPolynomial::charpoly(&QMatrix::identity(4)).unwrap();
        assert_eq!(id, p("x - 1").pow(4));
    }
}
