//! The SL(2,Z) action on origamis, orbit graphs and Veech group data.
//!
//! Conventions, with `∘` ordinary composition of maps:
//! `L·(r,u) = (r, u∘r⁻¹)`, `R·(r,u) = (r∘u⁻¹, u)`, and `-I·(r,u) = (r⁻¹, u⁻¹)`.
//! A word acts with its rightmost letter first.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::origami::Origami;
use crate::sl2::{Letter, Sl2Matrix, Word};

pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

/// One elementary step of the action without canonicalization.
pub fn apply_letter(o: &Origami, letter: Letter, positive: bool) -> Origami {
    let (r, u) = (o.r(), o.u());
    let (r2, u2) = match (letter, positive) {
        (Letter::L, true) => (r.clone(), r.inverse().then(u)),
        (Letter::L, false) => (r.clone(), r.then(u)),
        (Letter::R, true) => (u.inverse().then(r), u.clone()),
        (Letter::R, false) => (u.then(r), u.clone()),
    };
    Origami::new_unchecked(r2, u2)
}

/// `-I` acting on an origami.
pub fn apply_minus_identity(o: &Origami) -> Origami {
    Origami::new_unchecked(o.r().inverse(), o.u().inverse())
}

/// Applies a word, rightmost letter first, without canonicalization.
pub fn apply_word(o: &Origami, w: &Word) -> Origami {
    w.steps_action_order()
        .fold(o.clone(), |acc, (l, pos)| apply_letter(&acc, l, pos))
}

pub fn act_l(o: &Origami) -> Origami {
    apply_letter(o, Letter::L, true).canonical_form()
}

pub fn act_r(o: &Origami) -> Origami {
    apply_letter(o, Letter::R, true).canonical_form()
}

pub fn act_l_inverse(o: &Origami) -> Origami {
    apply_letter(o, Letter::L, false).canonical_form()
}

pub fn act_r_inverse(o: &Origami) -> Origami {
    apply_letter(o, Letter::R, false).canonical_form()
}

/// The SL(2,Z)-orbit of an origami with `L` and `R` edges between canonical nodes.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitGraph {
    pub nodes: Vec<Origami>,
    pub l_edges: Vec<usize>,
    pub r_edges: Vec<usize>,
    /// Index of the input origami; always 0.
    pub base: usize,
    /// `tree_words[i]` carries the base to node `i`.
    pub tree_words: Vec<Word>,
    #[serde(skip)]
    l_inverse: Vec<usize>,
    #[serde(skip)]
    r_inverse: Vec<usize>,
}

pub fn orbit(o: &Origami) -> Result<OrbitGraph> {
    orbit_with_cap(o, DEFAULT_ORBIT_CAP)
}

/// Breadth-first closure under `L` and `R`; nodes are numbered in discovery order.
pub fn orbit_with_cap(o: &Origami, cap: usize) -> Result<OrbitGraph> {
    let start = o.canonical_form();
    let mut index: HashMap<Origami, usize> = HashMap::new();
    let mut nodes = vec![start.clone()];
    let mut tree_words = vec![Word::empty()];
    index.insert(start, 0);
    let mut l_edges = Vec::new();
    let mut r_edges = Vec::new();
    let mut k = 0;
    while k < nodes.len() {
        for letter in [Letter::L, Letter::R] {
            let image = apply_letter(&nodes[k], letter, true).canonical_form();
            let j = match index.get(&image) {
                Some(&j) => j,
                None => {
                    if nodes.len() >= cap {
                        return Err(Error::OrbitCap { cap, explored: nodes.len() });
                    }
                    let j = nodes.len();
                    index.insert(image.clone(), j);
                    nodes.push(image);
                    tree_words.push(Word::letter(letter).concat(&tree_words[k]));
                    j
                }
            };
            match letter {
                Letter::L => l_edges.push(j),
                Letter::R => r_edges.push(j),
            }
        }
        k += 1;
    }
    let l_inverse = invert(&l_edges);
    let r_inverse = invert(&r_edges);
    Ok(OrbitGraph { nodes, l_edges, r_edges, base: 0, tree_words, l_inverse, r_inverse })
}

fn invert(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (i, &j) in map.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspData {
    pub representative: usize,
    pub width: usize,
    pub direction_label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub member: bool,
    pub word: Word,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VeechData {
    pub index: usize,
    /// Index of the image in PSL(2,Z).
    pub projective_index: usize,
    pub contains_minus_identity: bool,
    pub generator_words: Vec<Word>,
    /// One cusp per `L`-cycle on the orbit nodes.
    pub cusps: Vec<CuspData>,
    /// Cusps of the curve itself (`L`-cycles on nodes modulo `-I`).
    pub projective_cusps: usize,
    pub e2: usize,
    pub e3: usize,
    pub curve_genus: usize,
    pub automorphism_count: usize,
    /// Set when the surface has nontrivial automorphisms.
    pub projective_index_only: bool,
}

impl OrbitGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn step(&self, node: usize, letter: Letter, positive: bool) -> usize {
        match (letter, positive) {
            (Letter::L, true) => self.l_edges[node],
            (Letter::L, false) => self.l_inverse[node],
            (Letter::R, true) => self.r_edges[node],
            (Letter::R, false) => self.r_inverse[node],
        }
    }

    /// The node reached from `node` under a word (rightmost letter first).
    pub fn act(&self, node: usize, w: &Word) -> usize {
        w.steps_action_order()
            .fold(node, |n, (l, pos)| self.step(n, l, pos))
    }

    pub fn index_of(&self, o: &Origami) -> Option<usize> {
        let c = o.canonical_form();
        self.nodes.iter().position(|n| *n == c)
    }

    fn minus_identity_map(&self) -> Vec<usize> {
        let lookup: HashMap<&Origami, usize> =
            self.nodes.iter().enumerate().map(|(i, o)| (o, i)).collect();
        self.nodes
            .iter()
            .map(|o| lookup[&apply_minus_identity(o).canonical_form()])
            .collect()
    }

    /// Cycles of the `L` permutation, each starting at its smallest node.
    pub fn l_cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for i in 0..self.len() {
            if seen[i] {
                continue;
            }
            let mut cyc = vec![i];
            seen[i] = true;
            let mut j = self.l_edges[i];
            while j != i {
                seen[j] = true;
                cyc.push(j);
                j = self.l_edges[j];
            }
            out.push(cyc);
        }
        out
    }

    pub fn cusps(&self) -> Vec<CuspData> {
        self.l_cycles()
            .into_iter()
            .map(|cyc| {
                let rep = cyc[0];
                // horizontal on node rep = t·base is the direction t⁻¹·(1,0) on the base
                let inv = self.tree_words[rep].matrix().inverse().entries();
                let (p, q) = normalize_direction(inv[0], inv[2]);
                CuspData {
                    representative: rep,
                    width: cyc.len(),
                    direction_label: format!("({p},{q}) via {}", self.tree_words[rep]),
                }
            })
            .collect()
    }

    /// Decides whether `m` stabilizes the base by following its `L`/`R` word.
    pub fn membership(&self, m: &Sl2Matrix) -> Membership {
        let word = m.decompose();
        Membership { member: self.act(self.base, &word) == self.base, word }
    }

    /// Generators of the stabilizer of the base, one per non-tree edge.
    pub fn schreier_generators(&self) -> Vec<Word> {
        let mut gens = Vec::new();
        for i in 0..self.len() {
            for letter in [Letter::L, Letter::R] {
                let j = self.step(i, letter, true);
                let w = self.tree_words[j]
                    .inverse()
                    .concat(&Word::letter(letter))
                    .concat(&self.tree_words[i]);
                if !w.is_empty() {
                    gens.push(w);
                }
            }
        }
        gens
    }

    pub fn veech_data(&self) -> VeechData {
        let n = self.len();
        let minus = self.minus_identity_map();
        let contains_minus_identity = minus[self.base] == self.base;
        let projective_index = if contains_minus_identity { n } else { n / 2 };
        let s = Word::parse("L-1RL-1").expect("constant word");
        let u = Word::parse("L-1R").expect("constant word");
        let fixed_classes = |w: &Word| -> usize {
            let fixed = (0..n)
                .filter(|&i| {
                    let j = self.act(i, w);
                    j == i || j == minus[i]
                })
                .count();
            if contains_minus_identity { fixed } else { fixed / 2 }
        };
        let e2 = fixed_classes(&s);
        let e3 = fixed_classes(&u);
        let cusps = self.cusps();
        let projective_cusps = if contains_minus_identity {
            cusps.len()
        } else {
            // -I commutes with L, so it permutes the L-cycles; a cycle is either
            // mapped to itself or paired with another one.
            let cycles = self.l_cycles();
            let mut owner = vec![0; n];
            for (k, c) in cycles.iter().enumerate() {
                for &i in c {
                    owner[i] = k;
                }
            }
            let self_paired = cycles.iter().filter(|c| owner[minus[c[0]]] == owner[c[0]]).count();
            self_paired + (cycles.len() - self_paired) / 2
        };
        // 12(g - 1) = μ - 3 e2 - 4 e3 - 6 c
        let twelve_g = 12 + projective_index as i64 - 3 * e2 as i64 - 4 * e3 as i64 - 6 * projective_cusps as i64;
        debug_assert!(twelve_g >= 0 && twelve_g % 12 == 0, "Riemann-Hurwitz gave 12g = {twelve_g}");
        let automorphism_count = self.nodes[self.base].automorphism_count();
        VeechData {
            index: n,
            projective_index,
            contains_minus_identity,
            generator_words: self.schreier_generators(),
            cusps,
            projective_cusps,
            e2,
            e3,
            curve_genus: (twelve_g / 12) as usize,
            automorphism_count,
            projective_index_only: automorphism_count > 1,
        }
    }

    /// Representative origami for each cusp; its horizontal direction is the cusp's periodic direction.
    pub fn cusp_directions(&self) -> Vec<(CuspData, Origami)> {
        self.cusps()
            .into_iter()
            .map(|c| {
                let o = self.nodes[c.representative].clone();
                (c, o)
            })
            .collect()
    }

    /// Edge list `i L j` / `i R j` followed by a node table `node i <origami>`.
    pub fn edge_list(&self) -> String {
        let mut s = String::new();
        for i in 0..self.len() {
            let _ = writeln!(s, "{i} L {}", self.l_edges[i]);
            let _ = writeln!(s, "{i} R {}", self.r_edges[i]);
        }
        for (i, o) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "node {i} {o}");
        }
        s
    }
}

fn normalize_direction(p: i64, q: i64) -> (i64, i64) {
    if q < 0 || (q == 0 && p < 0) {
        (-p, -q)
    } else {
        (p, q)
    }
}

pub fn veech_group(o: &Origami) -> Result<VeechData> {
    Ok(orbit(o)?.veech_data())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::origami::fixtures::{s3, s4};

    #[test]
    fn torus_is_fixed() {
        let t = Origami::torus();
        assert_eq!(act_l(&t), t);
        assert_eq!(act_r(&t), t);
        let v = veech_group(&t).unwrap();
        assert_eq!((v.index, v.cusps.len(), v.curve_genus), (1, 1, 0));
        assert_eq!(v.cusps[0].width, 1);
    }

    #[test]
    fn s3_orbit() {
        let g = orbit(&s3()).unwrap();
        assert_eq!(g.len(), 3);
        let v = g.veech_data();
        assert_eq!((v.index, v.cusps.len(), v.curve_genus), (3, 2, 0));
        assert!(v.contains_minus_identity);
        let mut widths: Vec<usize> = v.cusps.iter().map(|c| c.width).collect();
        widths.sort();
        assert_eq!(widths, vec![1, 2]);
    }

    #[test]
    fn s3_membership_matches_congruence() {
        let g = orbit(&s3()).unwrap();
        for a in -10i64..=10 {
            for b in -10i64..=10 {
                for c in -10i64..=10 {
                    for d in -10i64..=10 {
                        let Ok(m) = Sl2Matrix::new(a, b, c, d) else { continue };
                        let expected = (a + b).rem_euclid(2) == 1 && (c + d).rem_euclid(2) == 1;
                        assert_eq!(g.membership(&m).member, expected, "{m}");
                    }
                }
            }
        }
        assert!(!g.membership(&Sl2Matrix::L).member);
        let id = g.membership(&Sl2Matrix::IDENTITY);
        assert!(id.member && id.word.is_empty());
    }

    #[test]
    fn s4_has_eight_cusps() {
        let v = veech_group(&s4()).unwrap();
        assert_eq!(v.cusps.len(), 8);
        assert_eq!(v.cusps.iter().map(|c| c.width).sum::<usize>(), v.index);
    }

    #[test]
    fn schreier_generators_stabilize() {
        for o in [s3(), s4()] {
            let g = orbit(&o).unwrap();
            for w in g.schreier_generators() {
                assert_eq!(g.act(0, &w), 0, "{w}");
                assert_eq!(apply_word(&o, &w).canonical_form(), o.canonical_form());
            }
        }
    }

    #[test]
    fn inverse_steps() {
        let o = s4();
        assert_eq!(act_l(&apply_letter(&o, Letter::L, false)), o.canonical_form());
        assert_eq!(act_r(&apply_letter(&o, Letter::R, false)), o.canonical_form());
        assert_eq!(act_l_inverse(&act_l(&o)), o.canonical_form());
        assert_eq!(act_r_inverse(&act_r(&o)), o.canonical_form());
    }

    #[test]
    fn cap_is_enforced() {
        match orbit_with_cap(&s4(), 5) {
            Err(Error::OrbitCap { cap: 5, explored }) => assert_eq!(explored, 5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn edge_list_shape() {
        let g = orbit(&s3()).unwrap();
        let text = g.edge_list();
        assert_eq!(text.lines().count(), 9);
        assert!(text.starts_with("0 L "));
    }
}
