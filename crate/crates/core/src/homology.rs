//! Cellular homology of an origami and the Kontsevich–Zorich action of affine words.
//!
//! Square `i` contributes the edge `a_i` along its top (left to right, index
//! `i`) and `b_i` along its right side (bottom to top, index `n + i`). Vertices
//! are named by the square whose bottom-left corner they are, identified
//! around each cone point.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::linalg::{dot, q, q_to_string, QMatrix, Q};
use crate::orbit::apply_letter;
use crate::origami::Origami;
use crate::sl2::{Letter, Word};

/// A 1-chain: coefficients of `a_1..a_n` followed by `b_1..b_n`.
pub type Chain = Vec<Q>;

#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub degree: usize,
    /// Vertex of the top-right corner of each square.
    pub top_right_vertex: Vec<usize>,
    pub vertex_count: usize,
    /// `∂₂`: one row per square, one column per edge.
    pub boundary2: QMatrix,
    /// `∂₁`: one row per vertex, one column per edge.
    pub boundary1: QMatrix,
}

impl ChainComplex {
    pub fn new(o: &Origami) -> Self {
        let n = o.degree();
        let (r, u) = (o.r(), o.u());
        let (ri, ui) = (r.inverse(), u.inverse());
        // bottom-left corner labels; TR(i) = BL(u r i) = BL(r u i)
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..n {
            let a = find(&mut parent, u.apply(r.apply(i)));
            let b = find(&mut parent, r.apply(u.apply(i)));
            parent[a] = b;
        }
        let mut vertex_of_root = vec![usize::MAX; n];
        let mut vertex_count = 0;
        let mut top_right_vertex = vec![0; n];
        for (i, tr) in top_right_vertex.iter_mut().enumerate() {
            let root = find(&mut parent, u.apply(r.apply(i)));
            if vertex_of_root[root] == usize::MAX {
                vertex_of_root[root] = vertex_count;
                vertex_count += 1;
            }
            *tr = vertex_of_root[root];
        }
        let mut boundary2 = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            // bottom + right - top - left
            boundary2[(i, ui.apply(i))] += q(1);
            boundary2[(i, n + i)] += q(1);
            boundary2[(i, i)] -= q(1);
            boundary2[(i, n + ri.apply(i))] -= q(1);
        }
        let mut boundary1 = QMatrix::zeros(vertex_count, 2 * n);
        for i in 0..n {
            // a_i runs TR(r⁻¹ i) → TR(i); b_i runs TR(u⁻¹ i) → TR(i)
            boundary1[(top_right_vertex[i], i)] += q(1);
            boundary1[(top_right_vertex[ri.apply(i)], i)] -= q(1);
            boundary1[(top_right_vertex[i], n + i)] += q(1);
            boundary1[(top_right_vertex[ui.apply(i)], n + i)] -= q(1);
        }
        ChainComplex { degree: n, top_right_vertex, vertex_count, boundary2, boundary1 }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.degree as i64
    }

    pub fn is_cycle(&self, c: &[Q]) -> bool {
        self.boundary1.mul_vec(c).iter().all(|x| x.is_zero())
    }
}

/// Homology of one origami with a fixed cohomology basis used as coordinates.
#[derive(Debug, Clone)]
pub struct Homology {
    origami: Origami,
    complex: ChainComplex,
    /// Cocycles whose classes form a basis of H¹; `coords(γ)_k = ⟨ζ_k, γ⟩`.
    cocycles: Vec<Chain>,
    /// Intersection pairing in cocycle coordinates.
    gram: QMatrix,
    pub basis: HomologyBasis,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomologyBasis {
    #[serde(with = "chains_text")]
    pub absolute_basis: Vec<Chain>,
    #[serde(with = "chains_text")]
    pub tautological: Vec<Chain>,
    #[serde(with = "chains_text")]
    pub zero_part_basis: Vec<Chain>,
}

impl Homology {
    pub fn new(o: &Origami) -> Self {
        let n = o.degree();
        let complex = ChainComplex::new(o);
        let (r, u) = (o.r(), o.u());
        let (ri, ui) = (r.inverse(), u.inverse());

        let z1 = complex.boundary2.nullspace();
        // coboundaries of vertices are the rows of ∂₁
        let mut span: Vec<Chain> = (0..complex.vertex_count)
            .map(|v| complex.boundary1.row(v).to_vec())
            .collect();
        let mut rank = QMatrix::from_columns(&span).rank();
        let mut cocycles = Vec::new();
        for z in z1 {
            span.push(z.clone());
            let new_rank = QMatrix::from_columns(&span).rank();
            if new_rank > rank {
                rank = new_rank;
                cocycles.push(z);
            } else {
                span.pop();
            }
        }
        let dim = cocycles.len();
        // cup product evaluated on the fundamental class
        let cup = |al: &Chain, be: &Chain| -> Q {
            (0..n)
                .map(|i| &al[ui.apply(i)] * &be[n + i] - &al[n + ri.apply(i)] * &be[i])
                .sum()
        };
        let mut c = QMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                c[(i, j)] = cup(&cocycles[i], &cocycles[j]);
            }
        }
        let gram = c.transpose().inverse().expect("cup product is nondegenerate");

        let mut h = Homology {
            origami: o.clone(),
            complex,
            cocycles,
            gram,
            basis: HomologyBasis {
                absolute_basis: Vec::new(),
                tautological: Vec::new(),
                zero_part_basis: Vec::new(),
            },
        };
        h.basis = h.holonomy_split();
        h
    }

    pub fn origami(&self) -> &Origami {
        &self.origami
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.complex.degree
    }

    /// `2g`.
    pub fn dimension(&self) -> usize {
        self.cocycles.len()
    }

    pub fn genus(&self) -> usize {
        self.dimension() / 2
    }

    pub fn coords(&self, c: &[Q]) -> Vec<Q> {
        self.cocycles.iter().map(|z| dot(z, c)).collect()
    }

    pub fn intersection(&self, x: &[Q], y: &[Q]) -> Q {
        let (cx, cy) = (self.coords(x), self.coords(y));
        dot(&cx, &self.gram.mul_vec(&cy))
    }

    pub fn gram_matrix(&self, vs: &[Chain]) -> QMatrix {
        let coords: Vec<Vec<Q>> = vs.iter().map(|v| self.coords(v)).collect();
        let mut m = QMatrix::zeros(vs.len(), vs.len());
        for i in 0..vs.len() {
            let gi = self.gram.transpose().mul_vec(&coords[i]);
            for j in 0..vs.len() {
                m[(i, j)] = dot(&gi, &coords[j]);
            }
        }
        m
    }

    pub fn is_cycle(&self, c: &[Q]) -> bool {
        self.complex.is_cycle(c)
    }

    pub fn holonomy(&self, c: &[Q]) -> (Q, Q) {
        let n = self.degree();
        (c[..n].iter().sum(), c[n..].iter().sum())
    }

    /// Dimension of the span of the classes (over Q).
    pub fn rank_of(&self, vs: &[Chain]) -> usize {
        if vs.is_empty() {
            return 0;
        }
        let cols: Vec<Vec<Q>> = vs.iter().map(|v| self.coords(v)).collect();
        QMatrix::from_columns(&cols).rank()
    }

    pub fn homologous(&self, x: &[Q], y: &[Q]) -> bool {
        self.coords(x) == self.coords(y)
    }

    fn holonomy_split(&self) -> HomologyBasis {
        let n = self.degree();
        // cycles whose classes span H₁
        let z = self.complex.boundary1.nullspace();
        let mut absolute: Vec<Chain> = Vec::new();
        let mut rank = 0;
        let tautological = vec![
            (0..2 * n).map(|e| if e < n { q(1) } else { q(0) }).collect::<Chain>(),
            (0..2 * n).map(|e| if e < n { q(0) } else { q(1) }).collect::<Chain>(),
        ];
        for c in tautological.iter().chain(z.iter()) {
            absolute.push(c.clone());
            let rk = self.rank_of(&absolute);
            if rk > rank {
                rank = rk;
            } else {
                absolute.pop();
            }
            if rank == self.dimension() {
                break;
            }
        }
        // zero-holonomy combinations of the absolute basis
        let mut hol = QMatrix::zeros(2, absolute.len());
        for (j, c) in absolute.iter().enumerate() {
            let (x, y) = self.holonomy(c);
            hol[(0, j)] = x;
            hol[(1, j)] = y;
        }
        let zero_part_basis: Vec<Chain> = hol
            .nullspace()
            .into_iter()
            .map(|coeffs| {
                let mut v = vec![Q::zero(); 2 * n];
                for (k, c) in coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        for (e, x) in absolute[k].iter().enumerate() {
                            v[e] += c * x;
                        }
                    }
                }
                v
            })
            .collect();
        HomologyBasis { absolute_basis: absolute, tautological, zero_part_basis }
    }

    /// Coordinates of a zero-holonomy class in the given basis of the zero part.
    pub fn solve_in(&self, basis: &[Chain], c: &[Q]) -> Option<Vec<Q>> {
        let cols: Vec<Vec<Q>> = basis.iter().map(|b| self.coords(b)).collect();
        QMatrix::from_columns(&cols).solve(&self.coords(c))
    }

    /// Checks that `vs` are cycles with zero holonomy forming a basis of the zero part.
    pub fn check_zero_part_basis(&self, vs: &[Chain]) -> Result<()> {
        let n = self.degree();
        let want = self.dimension().saturating_sub(2);
        if vs.len() != want {
            return Err(Error::NotABasis(format!("expected {want} vectors, got {}", vs.len())));
        }
        for (k, v) in vs.iter().enumerate() {
            if v.len() != 2 * n {
                return Err(Error::NotABasis(format!("vector {} has length {}", k + 1, v.len())));
            }
            if !self.is_cycle(v) {
                return Err(Error::NotABasis(format!("vector {} is not a cycle", k + 1)));
            }
            let (x, y) = self.holonomy(v);
            if !x.is_zero() || !y.is_zero() {
                return Err(Error::NotABasis(format!("vector {} has nonzero holonomy", k + 1)));
            }
        }
        if self.rank_of(vs) != want {
            return Err(Error::NotABasis("vectors are linearly dependent in homology".into()));
        }
        Ok(())
    }
}

/// Elementary chain maps carrying edges of `o` to edges of the sheared origami
/// (same square labels).
pub fn step_chain_map(o: &Origami, letter: Letter, positive: bool, c: &[Q]) -> Chain {
    let n = o.degree();
    let mut out = vec![Q::zero(); 2 * n];
    let (r, u) = (o.r(), o.u());
    let (ri, ui) = (r.inverse(), u.inverse());
    for j in 0..n {
        let (a, b) = (&c[j], &c[n + j]);
        match (letter, positive) {
            (Letter::L, true) => {
                // a_j ↦ a_{r j}, b_j ↦ b_j + a_{r j}
                let rj = r.apply(j);
                out[rj] += a;
                out[n + j] += b;
                out[rj] += b;
            }
            (Letter::L, false) => {
                // a_k ↦ a_{r⁻¹ k}, b_j ↦ b_j - a_j
                let rij = ri.apply(j);
                out[rij] += a;
                out[n + j] += b;
                out[j] -= b;
            }
            (Letter::R, true) => {
                // b_j ↦ b_{u j}, a_j ↦ a_j + b_{u j}
                let uj = u.apply(j);
                out[n + uj] += b;
                out[j] += a;
                out[n + uj] += a;
            }
            (Letter::R, false) => {
                // b_k ↦ b_{u⁻¹ k}, a_j ↦ a_j - b_j
                let uij = ui.apply(j);
                out[n + uij] += b;
                out[j] += a;
                out[n + j] -= a;
            }
        }
    }
    out
}

/// Transports a chain along a relabeling `sigma` (square `i` becomes `sigma(i)`).
pub fn relabel_chain(sigma: &crate::perm::Permutation, c: &[Q]) -> Chain {
    let n = sigma.degree();
    let mut out = vec![Q::zero(); 2 * n];
    for i in 0..n {
        let s = sigma.apply(i);
        out[s] = c[i].clone();
        out[n + s] = c[n + i].clone();
    }
    out
}

/// The matrix of an affine element on the zero part, columns are images of basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KzMatrix {
    pub word: Word,
    pub matrix: QMatrix,
}

impl KzMatrix {
    pub fn is_symplectic(&self, omega: &QMatrix) -> bool {
        &(&self.matrix.transpose() * omega) * &self.matrix == *omega
    }

    pub fn determinant(&self) -> Q {
        self.matrix.determinant()
    }

    /// `(A - I)^2 = 0`.
    pub fn is_unipotent(&self) -> bool {
        let d = self.matrix.sub(&QMatrix::identity(self.matrix.rows()));
        (&d * &d).is_zero()
    }

    /// Smallest `k ≤ 12` with `A^k` unipotent, if any.
    pub fn quasi_unipotent_order(&self) -> Option<u32> {
        let id = QMatrix::identity(self.matrix.rows());
        (1..=12).find(|&k| {
            let d = self.matrix.pow(k).sub(&id);
            d.pow(self.matrix.rows() as u32).is_zero()
        })
    }
}

/// Chain map of an affine word on `o`, followed by the relabeling back onto `o`.
pub fn affine_chain_map(o: &Origami, word: &Word) -> Result<impl Fn(&[Q]) -> Chain> {
    let mut path: Vec<(Origami, Letter, bool)> = Vec::new();
    let mut cur = o.clone();
    for (l, pos) in word.steps_action_order() {
        let next = apply_letter(&cur, l, pos);
        path.push((cur, l, pos));
        cur = next;
    }
    let isos = cur.isomorphisms_to(o);
    let sigma = match isos.len() {
        0 => return Err(Error::NotAffineWord(word.to_string())),
        1 => isos.into_iter().next().expect("one element"),
        k => return Err(Error::NontrivialAutomorphisms(k)),
    };
    Ok(move |c: &[Q]| {
        let mut v = c.to_vec();
        for (org, l, pos) in &path {
            v = step_chain_map(org, *l, *pos, &v);
        }
        relabel_chain(&sigma, &v)
    })
}

/// The action of an affine word on the zero part, in the basis `basis`.
pub fn kz_action_in(h: &Homology, word: &Word, basis: &[Chain]) -> Result<KzMatrix> {
    let map = affine_chain_map(h.origami(), word)?;
    let k = basis.len();
    let mut m = QMatrix::zeros(k, k);
    for (j, b) in basis.iter().enumerate() {
        let img = map(b);
        let x = h
            .solve_in(basis, &img)
            .ok_or_else(|| Error::NotABasis("image leaves the span of the basis".into()))?;
        for i in 0..k {
            m[(i, j)] = x[i].clone();
        }
    }
    Ok(KzMatrix { word: word.clone(), matrix: m })
}

/// The action on the zero part in the internal basis.
pub fn kz_action(h: &Homology, word: &Word) -> Result<KzMatrix> {
    kz_action_in(h, word, &h.basis.zero_part_basis)
}

/// Conjugates a matrix given in the internal zero-part basis into `target`.
pub fn express_in_basis(h: &Homology, m: &KzMatrix, target: &[Chain]) -> Result<KzMatrix> {
    h.check_zero_part_basis(target)?;
    let cols: Vec<Vec<Q>> = target
        .iter()
        .map(|t| h.solve_in(&h.basis.zero_part_basis, t).expect("zero-holonomy cycle"))
        .collect();
    let x = QMatrix::from_columns(&cols);
    let xi = x.inverse().ok_or_else(|| Error::NotABasis("singular change of basis".into()))?;
    Ok(KzMatrix { word: m.word.clone(), matrix: &(&xi * &m.matrix) * &x })
}

/// Intersection matrix of a list of cycles.
pub fn intersection_form(h: &Homology, basis: &[Chain]) -> QMatrix {
    h.gram_matrix(basis)
}

/// Parses `1/2*a1 + 1/2*a2 - b4` into a chain on `n` squares.
pub fn parse_chain(text: &str, n: usize) -> Result<Chain> {
    let mut out = vec![Q::zero(); 2 * n];
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut first = true;
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
        let mut sign = Q::one();
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
            skip_ws(&mut i);
        } else if !first {
            return Err(ParseError::new(i, (bytes[i] as char).to_string(), "expected '+' or '-'").into());
        }
        first = false;
        // optional coefficient followed by '*'
        let start = i;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'/') {
            i += 1;
        }
        let coef = if i > start {
            let t = &text[start..i];
            let c = crate::linalg::q_parse(t).ok_or_else(|| ParseError::new(start, t, "bad coefficient"))?;
            skip_ws(&mut i);
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
                skip_ws(&mut i);
            }
            c
        } else {
            Q::one()
        };
        if i >= bytes.len() {
            return Err(ParseError::new(i, "", "expected an edge name").into());
        }
        let kind = bytes[i];
        if kind != b'a' && kind != b'b' {
            return Err(ParseError::new(i, (kind as char).to_string(), "expected edge a<k> or b<k>").into());
        }
        i += 1;
        let idx_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let idx_text = &text[idx_start..i];
        let k: usize = idx_text
            .parse()
            .map_err(|_| ParseError::new(idx_start, idx_text, "expected a square index"))?;
        if k == 0 || k > n {
            return Err(ParseError::new(idx_start, idx_text, format!("square index out of range 1..={n}")).into());
        }
        let e = if kind == b'a' { k - 1 } else { n + k - 1 };
        out[e] += sign * coef;
    }
    Ok(out)
}

pub fn chain_to_string(c: &[Q]) -> String {
    let n = c.len() / 2;
    let mut s = String::new();
    for (e, x) in c.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let name = if e < n { format!("a{}", e + 1) } else { format!("b{}", e - n + 1) };
        let neg = x.is_negative();
        let mag = x.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            s.push_str(&q_to_string(&mag));
            s.push('*');
        }
        s.push_str(&name);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Display helper for a chain.
pub struct ChainDisplay<'a>(pub &'a [Q]);

impl fmt::Display for ChainDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&chain_to_string(self.0))
    }
}

mod chains_text {
    use super::{chain_to_string, parse_chain, Chain};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Chain], s: S) -> Result<S::Ok, S::Error> {
        let n = v.first().map_or(0, |c| c.len() / 2);
        let mut items: Vec<String> = Vec::with_capacity(v.len() + 1);
        items.push(format!("n={n}"));
        items.extend(v.iter().map(|c| chain_to_string(c)));
        items.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Chain>, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        let Some((head, rest)) = items.split_first() else { return Ok(Vec::new()) };
        let n: usize = head
            .strip_prefix("n=")
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| serde::de::Error::custom("missing n= header"))?;
        rest.iter()
            .map(|t| parse_chain(t, n).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Basis file: an `n=` line, then one chain per line; `#` starts a comment.
pub fn parse_basis(text: &str) -> Result<Vec<Chain>> {
    let mut n: Option<usize> = None;
    let mut out = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(v) = content.strip_prefix("n=") {
            let v = v.trim();
            n = Some(v.parse().map_err(|_| ParseError::new(start, v, "bad degree"))?);
            continue;
        }
        let degree = n.ok_or_else(|| ParseError::new(start, content, "missing n= line before chains"))?;
        out.push(parse_chain(content, degree).map_err(|e| match e {
            Error::Parse(p) => Error::Parse(ParseError::new(p.position + start, p.token, p.message)),
            other => other,
        })?);
    }
    Ok(out)
}

/// The basis of the zero part of S₃ used to display its matrices.
pub fn s3_reference_basis() -> Vec<Chain> {
    [
        "1/2*a1 + 1/2*a2 - 1/2*a7 - 1/2*a8",
        "a4 - a5",
        "1/2*b1 + 1/2*b2 - 1/2*b6 - 1/2*b7",
        "b4 - b5",
    ]
    .iter()
    .map(|t| parse_chain(t, 8).expect("constant chain"))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::origami::fixtures::{s3, s4};

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(ChainComplex::new(&Origami::torus()).euler_characteristic(), 0);
        assert_eq!(ChainComplex::new(&Origami::torus()).vertex_count, 1);
        assert_eq!(ChainComplex::new(&s3()).euler_characteristic(), -4);
        assert_eq!(ChainComplex::new(&s4()).euler_characteristic(), -6);
    }

    #[test]
    fn boundary_of_boundary() {
        for o in [s3(), s4()] {
            let c = ChainComplex::new(&o);
            assert!((&c.boundary1 * &c.boundary2.transpose()).is_zero());
        }
    }

    #[test]
    fn dimensions() {
        assert_eq!(Homology::new(&Origami::torus()).basis.zero_part_basis.len(), 0);
        assert_eq!(Homology::new(&s3()).basis.zero_part_basis.len(), 4);
        assert_eq!(Homology::new(&s4()).basis.zero_part_basis.len(), 6);
    }

    #[test]
    fn torus_intersection() {
        let h = Homology::new(&Origami::torus());
        let f = intersection_form(&h, &h.basis.tautological);
        assert_eq!(f, QMatrix::from_i64_rows(&[&[0, 1], &[-1, 0]]));
    }

    #[test]
    fn s3_reference_basis_omega() {
        let h = Homology::new(&s3());
        let b = s3_reference_basis();
        h.check_zero_part_basis(&b).unwrap();
        let omega = intersection_form(&h, &b);
        let expect = QMatrix::from_i64_rows(&[
            &[0, 0, 1, 1],
            &[0, 0, -1, 1],
            &[-1, 1, 0, 0],
            &[-1, -1, 0, 0],
        ]);
        assert_eq!(omega, expect);
        assert_eq!(omega.transpose(), omega.scale(&q(-1)));
    }

    #[test]
    fn s3_parabolic_matrices() {
        let h = Homology::new(&s3());
        let b = s3_reference_basis();
        let l2 = kz_action_in(&h, &w("L2"), &b).unwrap();
        let r2 = kz_action_in(&h, &w("R2"), &b).unwrap();
        assert_eq!(
            l2.matrix,
            QMatrix::from_i64_rows(&[&[-1, 0, -1, -1], &[0, 1, 0, 0], &[0, 0, 0, -1], &[0, 0, -1, 0]])
        );
        assert_eq!(
            r2.matrix,
            QMatrix::from_i64_rows(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[-1, 1, -1, 0], &[0, 0, 0, 1]])
        );
        let omega = intersection_form(&h, &b);
        assert!(l2.is_symplectic(&omega) && r2.is_symplectic(&omega));
    }

    #[test]
    fn internal_and_reference_agree() {
        let h = Homology::new(&s3());
        let m = kz_action(&h, &w("L8R2L2R2")).unwrap();
        let p = express_in_basis(&h, &m, &s3_reference_basis()).unwrap();
        let direct = kz_action_in(&h, &w("L8R2L2R2"), &s3_reference_basis()).unwrap();
        assert_eq!(p, direct);
        assert_eq!(m.matrix.charpoly(), p.matrix.charpoly());
    }

    #[test]
    fn empty_word_is_identity() {
        let h = Homology::new(&s4());
        assert_eq!(kz_action(&h, &Word::empty()).unwrap().matrix, QMatrix::identity(6));
    }

    #[test]
    fn non_affine_word_rejected() {
        let h = Homology::new(&s3());
        assert!(matches!(kz_action(&h, &w("L")), Err(Error::NotAffineWord(_))));
    }

    #[test]
    fn chain_text_roundtrip() {
        let c = parse_chain("1/2*a1 + 1/2 * a2 - a7 - 3*b8", 8).unwrap();
        assert_eq!(chain_to_string(&c), "1/2*a1 + 1/2*a2 - a7 - 3*b8");
        assert!(parse_chain("a9", 8).is_err());
        assert!(parse_chain("a1 a2", 8).is_err());
        assert_eq!(chain_to_string(&parse_chain("", 2).unwrap()), "0");
    }
}
