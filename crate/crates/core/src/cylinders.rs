//! Horizontal cylinder decompositions and the isotropic rank of their core curves.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::homology::{chain_to_string, Chain, Homology};
use crate::linalg::Q;
use crate::orbit::{orbit, CuspData, OrbitGraph};
use crate::origami::Origami;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cylinder {
    /// Rows from bottom to top; `rows[k+1][j] = u(rows[k][j])`. Squares are 0-based.
    pub rows: Vec<Vec<usize>>,
    pub width: usize,
    pub height: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderDecomposition {
    pub cylinders: Vec<Cylinder>,
    pub direction: String,
}

impl CylinderDecomposition {
    pub fn area(&self) -> usize {
        self.cylinders.iter().map(|c| c.width * c.height).sum()
    }

    /// `w×h` per cylinder.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        self.cylinders.iter().map(|c| (c.width, c.height)).collect()
    }
}

/// The line above an `r`-cycle is free of cone points iff `u` and `r` commute on it.
fn line_above_is_regular(o: &Origami, row: &[usize]) -> bool {
    let (r, u) = (o.r(), o.u());
    row.iter().all(|&i| u.apply(r.apply(i)) == r.apply(u.apply(i)))
}

pub fn horizontal_cylinders(o: &Origami) -> CylinderDecomposition {
    let rows = o.r().cycles();
    let mut row_of = vec![0; o.degree()];
    for (k, row) in rows.iter().enumerate() {
        for &i in row {
            row_of[i] = k;
        }
    }
    let regular: Vec<bool> = rows.iter().map(|row| line_above_is_regular(o, row)).collect();
    let above = |k: usize| row_of[o.u().apply(rows[k][0])];
    let mut bottom = vec![true; rows.len()];
    for k in 0..rows.len() {
        if regular[k] {
            bottom[above(k)] = false;
        }
    }
    let stack_from = |k: usize, limit: usize| -> Vec<Vec<usize>> {
        let mut out = vec![rows[k].clone()];
        while out.len() < limit && regular[row_of[out.last().expect("nonempty")[0]]] {
            let next: Vec<usize> = out.last().expect("nonempty").iter().map(|&i| o.u().apply(i)).collect();
            out.push(next);
        }
        out
    };
    let mut cylinders: Vec<Cylinder> = (0..rows.len())
        .filter(|&k| bottom[k])
        .map(|k| stack_from(k, rows.len()))
        .map(|rows| Cylinder { width: rows[0].len(), height: rows.len(), rows })
        .collect();
    if cylinders.is_empty() {
        // no cone point on any horizontal line: a single cylinder wrapping around
        let rows = stack_from(0, rows.len());
        cylinders.push(Cylinder { width: rows[0].len(), height: rows.len(), rows });
    }
    CylinderDecomposition { cylinders, direction: "horizontal".into() }
}

/// The core curve of each cylinder, as the sum of the top edges of its bottom row.
pub fn core_classes(h: &Homology, d: &CylinderDecomposition) -> Vec<Chain> {
    let n = h.degree();
    d.cylinders
        .iter()
        .map(|c| {
            let row_class = |row: &[usize]| {
                let mut v = vec![Q::zero(); 2 * n];
                for &i in row {
                    v[i] += crate::linalg::q(1);
                }
                v
            };
            let first = row_class(&c.rows[0]);
            debug_assert!(c.rows.iter().all(|row| h.homologous(&row_class(row), &first)));
            first
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CuspCylinders {
    pub cusp: CuspData,
    pub representative: Origami,
    pub decomposition: CylinderDecomposition,
    pub core_classes: Vec<String>,
    /// Pairs of cylinders (0-based) with equal core classes.
    pub homologous_pairs: Vec<(usize, usize)>,
    pub rank: usize,
    pub isotropic: bool,
}

pub fn analyze_cusp(graph: &OrbitGraph, cusp: &CuspData) -> CuspCylinders {
    let rep = graph.nodes[cusp.representative].clone();
    let h = Homology::new(&rep);
    let decomposition = horizontal_cylinders(&rep);
    let classes = core_classes(&h, &decomposition);
    let mut homologous_pairs = Vec::new();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            if h.homologous(&classes[i], &classes[j]) {
                homologous_pairs.push((i, j));
            }
        }
    }
    CuspCylinders {
        cusp: cusp.clone(),
        rank: h.rank_of(&classes),
        isotropic: h.gram_matrix(&classes).is_zero(),
        core_classes: classes.iter().map(|c| chain_to_string(c)).collect(),
        homologous_pairs,
        decomposition,
        representative: rep,
    }
}

/// Rank of the span of core classes at a cusp.
pub fn isotropic_rank(graph: &OrbitGraph, cusp: &CuspData) -> usize {
    analyze_cusp(graph, cusp).rank
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ForniReport {
    pub genus: usize,
    pub max_rank: usize,
    /// Some cusp has Lagrangian core curves.
    pub applicable: bool,
    pub cusps: Vec<CuspCylinders>,
}

pub fn forni_hypothesis_on(graph: &OrbitGraph) -> ForniReport {
    use rayon::prelude::*;
    let cusps: Vec<CuspCylinders> = graph.cusps().par_iter().map(|c| analyze_cusp(graph, c)).collect();
    let genus = graph.nodes[graph.base].genus();
    let max_rank = cusps.iter().map(|c| c.rank).max().unwrap_or(0);
    ForniReport { genus, max_rank, applicable: max_rank == genus, cusps }
}

pub fn forni_hypothesis(o: &Origami) -> Result<ForniReport> {
    Ok(forni_hypothesis_on(&orbit(o)?))
}
