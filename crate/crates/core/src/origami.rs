//! Origamis (square-tiled surfaces) as pairs of permutations.
//!
//! Square `r(i)` is glued to the right of square `i` and square `u(i)` on top
//! of it. All text I/O uses 1-based labels.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::perm::Permutation;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Origami {
    r: Permutation,
    u: Permutation,
}

/// Zero orders of the abelian differential, genus, and the number of
/// regular marked points (commutator fixed points).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub zero_orders: Vec<usize>,
    pub genus: usize,
    pub marked_points: usize,
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k: Vec<String> = self.zero_orders.iter().map(|k| k.to_string()).collect();
        write!(f, "H({}) genus {}", k.join(","), self.genus)?;
        if self.marked_points > 0 {
            write!(f, ", {} marked point(s)", self.marked_points)?;
        }
        Ok(())
    }
}

/// A system of imprimitivity: a partition of the squares preserved by `r` and `u`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BlockSystem(pub Vec<Vec<usize>>);

impl fmt::Display for BlockSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            let s: Vec<String> = b.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "{{{}}}", s.join(","))?;
        }
        Ok(())
    }
}

impl Origami {
    pub fn new(r: Permutation, u: Permutation) -> Result<Self> {
        if r.degree() != u.degree() {
            return Err(Error::InvalidOrigami(format!(
                "degrees differ: r has {}, u has {}",
                r.degree(),
                u.degree()
            )));
        }
        if r.degree() == 0 {
            return Err(Error::InvalidOrigami("degree must be positive".into()));
        }
        let o = Origami { r, u };
        if !o.is_transitive() {
            return Err(Error::InvalidOrigami(
                "<r,u> is not transitive (surface is disconnected)".into(),
            ));
        }
        Ok(o)
    }

    pub(crate) fn new_unchecked(r: Permutation, u: Permutation) -> Self {
        Origami { r, u }
    }

    pub fn torus() -> Self {
        Origami {
            r: Permutation::identity(1),
            u: Permutation::identity(1),
        }
    }

    pub fn from_cycles(r: &str, u: &str, n: usize) -> Result<Self> {
        Origami::new(
            Permutation::parse_cycles(r, n)?,
            Permutation::parse_cycles(u, n)?,
        )
    }

    #[inline]
    pub fn r(&self) -> &Permutation {
        &self.r
    }

    #[inline]
    pub fn u(&self) -> &Permutation {
        &self.u
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.r.degree()
    }

    fn is_transitive(&self) -> bool {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for j in [self.r.apply(i), self.u.apply(i)] {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == n
    }

    /// `r * u * r^-1 * u^-1`, read left to right.
    pub fn commutator(&self) -> Permutation {
        let (ri, ui) = (self.r.inverse(), self.u.inverse());
        self.r.then(&self.u).then(&ri).then(&ui)
    }

    pub fn stratum(&self) -> Stratum {
        let c = self.commutator();
        let mut zero_orders = Vec::new();
        let mut marked_points = 0;
        for cycle in c.cycles() {
            if cycle.len() == 1 {
                marked_points += 1;
            } else {
                zero_orders.push(cycle.len() - 1);
            }
        }
        zero_orders.sort_unstable_by(|a, b| b.cmp(a));
        let total: usize = zero_orders.iter().sum();
        Stratum {
            genus: total / 2 + 1,
            zero_orders,
            marked_points,
        }
    }

    pub fn genus(&self) -> usize {
        self.stratum().genus
    }

    /// Permutations commuting with both `r` and `u`, identity first.
    pub fn automorphisms(&self) -> Vec<Permutation> {
        (0..self.degree())
            .filter_map(|t| self.propagate_isomorphism(self, t))
            .collect()
    }

    pub fn automorphism_count(&self) -> usize {
        (0..self.degree())
            .filter(|&t| self.propagate_isomorphism(self, t).is_some())
            .count()
    }

    /// The relabeling `sigma` with `sigma(0) = target` carrying `self` onto
    /// `other` (so `self.r` relabeled by `sigma` equals `other.r`), if any.
    fn propagate_isomorphism(&self, other: &Origami, target: usize) -> Option<Permutation> {
        let n = self.degree();
        if other.degree() != n {
            return None;
        }
        let mut sigma = vec![usize::MAX; n];
        let mut used = vec![false; n];
        sigma[0] = target;
        used[target] = true;
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for (p, q) in [(&self.r, &other.r), (&self.u, &other.u)] {
                let j = p.apply(i);
                let img = q.apply(sigma[i]);
                if sigma[j] == usize::MAX {
                    if used[img] {
                        return None;
                    }
                    sigma[j] = img;
                    used[img] = true;
                    stack.push(j);
                } else if sigma[j] != img {
                    return None;
                }
            }
        }
        if sigma.contains(&usize::MAX) {
            return None;
        }
        Some(Permutation::from_images_unchecked(sigma))
    }

    /// All relabelings carrying `self` onto `other`.
    pub fn isomorphisms_to(&self, other: &Origami) -> Vec<Permutation> {
        (0..self.degree())
            .filter_map(|t| self.propagate_isomorphism(other, t))
            .collect()
    }

    /// Applies the relabeling `sigma` to both permutations.
    pub fn relabel(&self, sigma: &Permutation) -> Origami {
        Origami {
            r: self.r.relabel(sigma),
            u: self.u.relabel(sigma),
        }
    }

    /// Minimal nontrivial block systems of the monodromy group; empty when primitive.
    pub fn blocks(&self) -> Vec<BlockSystem> {
        let n = self.degree();
        let mut found: BTreeSet<BlockSystem> = BTreeSet::new();
        for j in 1..n {
            let sys = self.block_closure(0, j);
            if sys.0.len() > 1 {
                found.insert(sys);
            }
        }
        let all: Vec<BlockSystem> = found.into_iter().collect();
        all.iter()
            .filter(|a| !all.iter().any(|b| b != *a && refines(b, a)))
            .cloned()
            .collect()
    }

    /// Finest block system in which `x` and `y` share a block.
    fn block_closure(&self, x: usize, y: usize) -> BlockSystem {
        let n = self.degree();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        let (a, b) = (find(&mut parent, x), find(&mut parent, y));
        parent[a] = b;
        let mut changed = true;
        while changed {
            changed = false;
            for g in [&self.r, &self.u] {
                for i in 0..n {
                    let root = find(&mut parent, i);
                    let (a, b) = (find(&mut parent, g.apply(i)), find(&mut parent, g.apply(root)));
                    if a != b {
                        parent[a] = b;
                        changed = true;
                    }
                }
            }
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; n];
        for i in 0..n {
            let root = find(&mut parent, i);
            if index[root] == usize::MAX {
                index[root] = classes.len();
                classes.push(Vec::new());
            }
            classes[index[root]].push(i);
        }
        BlockSystem(classes)
    }

    /// Canonical representative of the simultaneous-conjugacy class, together
    /// with the relabeling from `self` to it.
    ///
    /// Each start square induces a breadth-first labeling (visiting `r(i)`
    /// before `u(i)`); the labeling with the lexicographically smallest
    /// `(r, u)` image vectors wins.
    pub fn canonical_with_relabel(&self) -> (Origami, Permutation) {
        let n = self.degree();
        let mut best: Option<(Vec<usize>, Vec<usize>, Vec<usize>)> = None;
        let mut label = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        for start in 0..n {
            label.iter_mut().for_each(|l| *l = usize::MAX);
            order.clear();
            label[start] = 0;
            order.push(start);
            let mut k = 0;
            while k < order.len() {
                let i = order[k];
                k += 1;
                for j in [self.r.apply(i), self.u.apply(i)] {
                    if label[j] == usize::MAX {
                        label[j] = order.len();
                        order.push(j);
                    }
                }
            }
            let rr: Vec<usize> = order.iter().map(|&i| label[self.r.apply(i)]).collect();
            // early exit on r before building u
            if let Some((br, _, _)) = &best {
                if rr > *br {
                    continue;
                }
            }
            let uu: Vec<usize> = order.iter().map(|&i| label[self.u.apply(i)]).collect();
            let better = match &best {
                None => true,
                Some((br, bu, _)) => (&rr, &uu) < (br, bu),
            };
            if better {
                best = Some((rr, uu, label.clone()));
            }
        }
        let (rr, uu, lab) = best.expect("degree is positive");
        (
            Origami {
                r: Permutation::from_images_unchecked(rr),
                u: Permutation::from_images_unchecked(uu),
            },
            Permutation::from_images_unchecked(lab),
        )
    }

    pub fn canonical_form(&self) -> Origami {
        self.canonical_with_relabel().0
    }

    /// Multi-line text form: `n=`, `r=`, `u=`.
    pub fn to_text(&self) -> String {
        format!("n={}\nr={}\nu={}\n", self.degree(), self.r, self.u)
    }

    /// Parses the two-line `r=...`/`u=...` format with an optional `n=...`
    /// line. Blank lines and `#` comments are ignored. Without `n=` the degree
    /// is the largest point mentioned.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut r_text: Option<(&str, usize)> = None;
        let mut u_text: Option<(&str, usize)> = None;
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let line_start = offset;
            offset += line.len();
            let content = line.split('#').next().unwrap_or("");
            let trimmed = content.trim();
            if trimmed.is_empty() {
                continue;
            }
            let lead = content.len() - content.trim_start().len();
            let Some((key, value)) = trimmed.split_once('=') else {
                return Err(ParseError::new(line_start + lead, trimmed, "expected key=value").into());
            };
            let value_pos = line_start + lead + key.len() + 1;
            match key.trim() {
                "n" => {
                    let v = value.trim();
                    n = Some(v.parse().map_err(|_| ParseError::new(value_pos, v, "bad degree"))?);
                }
                "r" => r_text = Some((value, value_pos)),
                "u" => u_text = Some((value, value_pos)),
                other => {
                    return Err(
                        ParseError::new(line_start + lead, other, "unknown key (expected n, r, u)").into(),
                    )
                }
            }
        }
        let (r_text, r_pos) = r_text.ok_or_else(|| ParseError::new(offset, "", "missing r= line"))?;
        let (u_text, u_pos) = u_text.ok_or_else(|| ParseError::new(offset, "", "missing u= line"))?;
        let shift = |e: ParseError, base: usize| ParseError::new(e.position + base, e.token, e.message);
        let n = match n {
            Some(n) => n,
            None => Permutation::max_point(r_text)
                .map_err(|e| shift(e, r_pos))?
                .max(Permutation::max_point(u_text).map_err(|e| shift(e, u_pos))?)
                .max(1),
        };
        let r = Permutation::parse_cycles(r_text, n).map_err(|e| shift(e, r_pos))?;
        let u = Permutation::parse_cycles(u_text, n).map_err(|e| shift(e, u_pos))?;
        Origami::new(r, u)
    }
}

fn refines(fine: &BlockSystem, coarse: &BlockSystem) -> bool {
    fine.0
        .iter()
        .all(|b| coarse.0.iter().any(|c| b.iter().all(|x| c.contains(x))))
}

impl fmt::Display for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={} u={}", self.r, self.u)?;
        let mentioned = self
            .r
            .cycles()
            .iter()
            .chain(self.u.cycles().iter())
            .filter(|c| c.len() > 1)
            .flatten()
            .max()
            .map_or(0, |m| m + 1);
        if mentioned != self.degree() {
            write!(f, " n={}", self.degree())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Origami({self})")
    }
}

/// The two reference surfaces S3 (degree 8) and S4 (degree 9).
pub mod fixtures {
    use super::Origami;

    /// Eight squares in H(2,2), genus 3.
    pub fn s3() -> Origami {
        Origami::from_cycles("(1,2,3,4)(5,6,7,8)", "(1,2,3,5)(4,8,7,6)", 8).expect("valid fixture")
    }

    /// Nine squares in H(3,3), genus 4.
    pub fn s4() -> Origami {
        Origami::from_cycles("(1,2,3)(4,5,6)(7,8,9)", "(4,2,1)(3,6,9)(7,8,5)", 9).expect("valid fixture")
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::{s3, s4};
    use super::*;

    #[test]
    fn s3_commutator() {
        assert_eq!(s3().commutator().to_string(), "(2,4,5)(3,8,6)");
    }

    #[test]
    fn s4_commutator_has_two_four_cycles() {
        assert_eq!(s4().commutator().cycle_type(), vec![4, 4, 1]);
    }

    #[test]
    fn torus_commutator_trivial() {
        assert!(Origami::torus().commutator().is_identity());
    }

    #[test]
    fn strata() {
        let s = s3().stratum();
        assert_eq!((s.zero_orders.clone(), s.genus, s.marked_points), (vec![2, 2], 3, 2));
        assert_eq!(s3().commutator().fixed_points(), vec![0, 6]);
        let s = s4().stratum();
        assert_eq!((s.zero_orders.clone(), s.genus, s.marked_points), (vec![3, 3], 4, 1));
        let t = Origami::torus().stratum();
        assert_eq!((t.zero_orders.len(), t.genus), (0, 1));
    }

    #[test]
    fn automorphisms() {
        assert_eq!(s3().automorphisms().len(), 1);
        assert_eq!(Origami::torus().automorphisms().len(), 1);
        let o = Origami::from_cycles("(1,2)", "(1,2)", 2).unwrap();
        let auts: Vec<String> = o.automorphisms().iter().map(|p| p.to_string()).collect();
        assert_eq!(auts, vec!["()", "(1,2)"]);
    }

    #[test]
    fn s3_blocks() {
        let b: Vec<String> = s3().blocks().iter().map(|b| b.to_string()).collect();
        assert_eq!(b, vec!["{1,3,6,8},{2,4,5,7}"]);
        assert!(Origami::torus().blocks().is_empty());
    }

    #[test]
    fn s4_is_primitive() {
        assert!(s4().blocks().is_empty());
    }

    #[test]
    fn canonical_form_fixtures() {
        assert_eq!(
            s3().canonical_form().to_string(),
            "r=(1,2,3,4)(5,7,8,6) u=(1,2,3,5)(4,6,8,7)"
        );
        assert_eq!(
            s4().canonical_form().to_string(),
            "r=(1,2,3)(4,5,7)(6,8,9) u=(1,3,5)(2,4,6)(7,8,9)"
        );
    }

    #[test]
    fn canonical_relabel_is_consistent() {
        let (c, sigma) = s4().canonical_with_relabel();
        assert_eq!(s4().relabel(&sigma), c);
    }

    #[test]
    fn rejects_disconnected() {
        assert!(matches!(
            Origami::from_cycles("(1,2)", "", 3),
            Err(Error::InvalidOrigami(_))
        ));
    }

    #[test]
    fn text_format() {
        let o = Origami::parse("# S3\nr=(1,2,3,4)(5,6,7,8)\nu=(1,2,3,5)(4,8,7,6)\n").unwrap();
        assert_eq!(o, s3());
        let o2 = Origami::parse(&o.to_text()).unwrap();
        assert_eq!(o, o2);
        let t = Origami::parse("n=1\nr=\nu=\n").unwrap();
        assert_eq!(t, Origami::torus());
        let e = Origami::parse("r=(1,2)\nu=(1,x)\n").unwrap_err();
        match e {
            Error::Parse(p) => assert_eq!((p.position, p.token.as_str()), (13, "x")),
            other => panic!("{other:?}"),
        }
        assert!(Origami::parse("r=(1,2)\n").is_err());
        assert!(Origami::parse("n=2\nr=(1,3)\nu=\n").is_err());
    }
}
