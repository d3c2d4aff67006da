//! Exhaustive generation of origamis of small degree in a given stratum,
//! grouped into `SL(2,Z)`-orbits.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criterion::{search_hyperbolic_pair, SearchBudget, Verdict};
use crate::cylinders::forni_hypothesis_on;
use crate::error::{Error, Result};
use crate::orbit::{orbit_with_cap, DEFAULT_ORBIT_CAP};
use crate::origami::{Origami, Stratum};
use crate::perm::Permutation;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchSpec {
    pub degree: usize,
    /// Zero orders, in any order; empty for the torus.
    pub stratum: Vec<usize>,
    /// Keep orbits whose maximal isotropic rank is at most this; `None` means `g − 1`.
    pub max_rank: Option<usize>,
    pub require_mmy: bool,
    pub mmy_budget: u32,
    /// Cap on distinct origamis (up to relabeling) before results are flagged partial.
    pub max_origamis: usize,
    pub orbit_cap: usize,
}

impl SearchSpec {
    pub fn new(degree: usize, stratum: Vec<usize>) -> Result<Self> {
        let spec = SearchSpec {
            degree,
            stratum,
            max_rank: None,
            require_mmy: false,
            mmy_budget: 8,
            max_origamis: 10_000_000,
            orbit_cap: DEFAULT_ORBIT_CAP,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::Precondition("degree must be at least 1".into()));
        }
        if self.stratum.contains(&0) || self.stratum.iter().sum::<usize>() % 2 == 1 {
            return Err(Error::Precondition("zero orders must be positive with even sum".into()));
        }
        if self.degree > 10 {
            return Err(Error::ResourceCap(format!("degree {} exceeds the supported maximum 10", self.degree)));
        }
        Ok(())
    }

    pub fn genus(&self) -> usize {
        self.stratum.iter().sum::<usize>() / 2 + 1
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitSummary {
    /// Smallest canonical form in the orbit.
    pub representative: Origami,
    pub size: usize,
    pub stratum: Stratum,
    pub cusps: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnumerationResult {
    pub spec: SearchSpec,
    pub orbits: Vec<OrbitSummary>,
    /// Distinct origamis up to relabeling.
    pub origami_count: usize,
    pub partial: bool,
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The permutation with consecutive cycles of the given lengths.
fn standard_permutation(shape: &[usize]) -> Vec<usize> {
    let n: usize = shape.iter().sum();
    let mut images = vec![0; n];
    let mut start = 0;
    for &len in shape {
        for k in 0..len {
            images[start + k] = start + (k + 1) % len;
        }
        start += len;
    }
    images
}

fn commutator_shape(r: &[usize], u: &[usize], ri: &[usize], ui: &[usize], scratch: &mut [bool]) -> Vec<usize> {
    let n = r.len();
    scratch.iter_mut().for_each(|s| *s = false);
    let mut out = Vec::new();
    for s in 0..n {
        if scratch[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !scratch[i] {
            scratch[i] = true;
            i = ui[ri[u[r[i]]]];
            len += 1;
        }
        if len > 1 {
            out.push(len);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn transitive(r: &[usize], u: &[usize]) -> bool {
    let n = r.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for j in [r[i], u[i]] {
            if !seen[j] {
                seen[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    count == n
}

/// Calls `f` on every permutation of `0..n` whose first image is `first`.
fn for_each_permutation_with_first(n: usize, first: usize, f: &mut dyn FnMut(&[usize])) {
    let mut rest: Vec<usize> = (0..n).filter(|&x| x != first).collect();
    let mut images = vec![first];
    fn rec(images: &mut Vec<usize>, rest: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if rest.is_empty() {
            f(images);
            return;
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            images.push(x);
            rec(images, rest, f);
            images.pop();
            rest.insert(k, x);
        }
    }
    rec(&mut images, &mut rest, f);
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut out = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x] = i;
    }
    out
}

/// Canonical forms of all origamis of the given degree and commutator shape.
pub fn canonical_origamis(degree: usize, stratum: &[usize]) -> BTreeSet<Origami> {
    let target = {
        let mut v: Vec<usize> = stratum.iter().map(|k| k + 1).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    };
    let work: Vec<(Vec<usize>, usize)> = partitions(degree, degree)
        .into_iter()
        .flat_map(|shape| (0..degree).map(move |first| (shape.clone(), first)))
        .collect();
    work.par_iter()
        .map(|(shape, first)| {
            let r = standard_permutation(shape);
            let ri = inverse(&r);
            let mut scratch = vec![false; degree];
            let mut found = BTreeSet::new();
            for_each_permutation_with_first(degree, *first, &mut |u| {
                let ui = inverse(u);
                if commutator_shape(&r, u, &ri, &ui, &mut scratch) == target && transitive(&r, u) {
                    let o = Origami::new_unchecked(
                        Permutation::from_images_unchecked(r.clone()),
                        Permutation::from_images_unchecked(u.to_vec()),
                    );
                    found.insert(o.canonical_form());
                }
            });
            found
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

pub fn enumerate_origamis(spec: &SearchSpec) -> Result<EnumerationResult> {
    spec.validate()?;
    let all = canonical_origamis(spec.degree, &spec.stratum);
    let origami_count = all.len();
    let partial = origami_count > spec.max_origamis;
    let mut remaining: BTreeSet<Origami> = all.into_iter().take(spec.max_origamis).collect();
    let mut orbits = Vec::new();
    while let Some(first) = remaining.pop_first() {
        let graph = orbit_with_cap(&first, spec.orbit_cap)?;
        for node in &graph.nodes {
            remaining.remove(node);
        }
        let representative = graph.nodes.iter().min().expect("nonempty orbit").clone();
        orbits.push(OrbitSummary {
            stratum: representative.stratum(),
            size: graph.len(),
            cusps: graph.cusps().len(),
            representative,
        });
    }
    orbits.sort_by(|a, b| a.representative.cmp(&b.representative));
    debug_assert!(orbits.iter().all(|o| o.stratum.zero_orders == {
        let mut v = spec.stratum.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }));
    Ok(EnumerationResult { spec: spec.clone(), orbits, origami_count, partial })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Candidate {
    pub orbit: OrbitSummary,
    pub max_rank: usize,
    pub genus: usize,
    /// `None` when no MMY search was requested.
    pub mmy_verdict: Option<Verdict>,
    pub mmy_words: Option<(String, String)>,
    pub status: String,
}

/// Orbits on which Forni's rank condition fails, optionally with an MMY pass.
pub fn filter_candidates(result: &EnumerationResult, spec: &SearchSpec) -> Result<Vec<Candidate>> {
    let evaluated: Vec<Result<Option<Candidate>>> = result
        .orbits
        .par_iter()
        .map(|orb| {
            let graph = orbit_with_cap(&orb.representative, spec.orbit_cap)?;
            let forni = forni_hypothesis_on(&graph);
            let genus = orb.stratum.genus;
            let bound = spec.max_rank.unwrap_or(genus.saturating_sub(1));
            if forni.max_rank > bound || forni.max_rank >= genus {
                return Ok(None);
            }
            let mut cand = Candidate {
                orbit: orb.clone(),
                max_rank: forni.max_rank,
                genus,
                mmy_verdict: None,
                mmy_words: None,
                status: "rank filter passed".into(),
            };
            if spec.require_mmy {
                match search_hyperbolic_pair(&orb.representative, &SearchBudget::new(spec.mmy_budget)) {
                    Ok(Some(cert)) => {
                        cand.mmy_verdict = Some(cert.verdict);
                        cand.mmy_words = Some((cert.phi1.to_string(), cert.phi2.to_string()));
                        cand.status = "mmy pass".into();
                    }
                    Ok(None) => {
                        cand.mmy_verdict = Some(Verdict::Inconclusive);
                        cand.status = "no passing pair within budget".into();
                    }
                    Err(Error::NontrivialAutomorphisms(k)) => {
                        cand.mmy_verdict = Some(Verdict::Inconclusive);
                        cand.status = format!("{k} automorphisms; cocycle not computed");
                    }
                    Err(e) => return Err(e),
                }
            }
            Ok(Some(cand))
        })
        .collect();
    let mut out = Vec::new();
    for r in evaluated {
        if let Some(c) = r? {
            out.push(c);
        }
    }
    Ok(out)
}

/// Text summary: one origami block per orbit and a table.
pub fn render_enumeration(result: &EnumerationResult) -> String {
    let mut s = String::new();
    let k: Vec<String> = result.spec.stratum.iter().map(|x| x.to_string()).collect();
    s.push_str(&format!(
        "# degree {} stratum ({}): {} origamis in {} orbits{}\n",
        result.spec.degree,
        k.join(","),
        result.origami_count,
        result.orbits.len(),
        if result.partial { " (partial)" } else { "" }
    ));
    for (i, o) in result.orbits.iter().enumerate() {
        s.push_str(&format!("# orbit {} size {} cusps {}\n{}\n", i + 1, o.size, o.cusps, o.representative.to_text()));
    }
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for o in &result.orbits {
        *sizes.entry(o.size).or_insert(0) += 1;
    }
    s.push_str("# size  count\n");
    for (size, count) in sizes {
        s.push_str(&format!("# {size:>4}  {count}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::origami::fixtures::s3;

    /// Pairs `(r, u)` in `S_n × S_n` that are transitive with the given commutator shape.
    fn naive_pair_count(n: usize, stratum: &[usize]) -> u64 {
        let mut target: Vec<usize> = stratum.iter().map(|k| k + 1).collect();
        target.sort_unstable_by(|a, b| b.cmp(a));
        let all: Vec<Vec<usize>> = (0..n).flat_map(|f| {
            let mut v = Vec::new();
            for_each_permutation_with_first(n, f, &mut |p| v.push(p.to_vec()));
            v
        }).collect();
        let mut scratch = vec![false; n];
        let mut count = 0;
        for r in &all {
            let ri = inverse(r);
            for u in &all {
                if transitive(r, u) && commutator_shape(r, u, &ri, &inverse(u), &mut scratch) == target {
                    count += 1;
                }
            }
        }
        count
    }

    fn factorial(n: usize) -> u64 {
        (1..=n as u64).product()
    }

    #[test]
    fn torus_only_in_degree_one() {
        let r = enumerate_origamis(&SearchSpec::new(1, vec![]).unwrap()).unwrap();
        assert_eq!(r.orbits.len(), 1);
        assert_eq!(r.orbits[0].representative, Origami::torus());
        assert!(filter_candidates(&r, &r.spec).unwrap().is_empty());
    }

    #[test]
    fn orbit_stabilizer_matches_naive_count() {
        for (n, k) in [(3, vec![2]), (4, vec![2]), (4, vec![1, 1]), (5, vec![2]), (5, vec![1, 1]), (6, vec![4]), (6, vec![2, 2]), (6, vec![])] {
            let r = enumerate_origamis(&SearchSpec::new(n, k.clone()).unwrap()).unwrap();
            let total: usize = r.orbits.iter().map(|o| o.size).sum();
            assert_eq!(total, r.origami_count);
            let weighted: u64 = canonical_origamis(n, &k).iter().map(|o| factorial(n) / o.automorphism_count() as u64).sum();
            assert_eq!(weighted, naive_pair_count(n, &k), "n={n} k={k:?}");
        }
    }

    #[test]
    fn s3_orbit_found() {
        let r = enumerate_origamis(&SearchSpec::new(8, vec![2, 2]).unwrap()).unwrap();
        let canon = s3().canonical_form();
        let graph = crate::orbit::orbit(&s3()).unwrap();
        let rep = graph.nodes.iter().min().unwrap();
        assert!(r.orbits.iter().any(|o| &o.representative == rep));
        assert!(graph.nodes.contains(&canon));
        let c = filter_candidates(&r, &r.spec).unwrap();
        assert!(c.iter().any(|c| &c.orbit.representative == rep));
        let again = enumerate_origamis(&r.spec).unwrap();
        assert_eq!(render_enumeration(&r), render_enumeration(&again));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(SearchSpec::new(0, vec![]).is_err());
        assert!(SearchSpec::new(5, vec![1]).is_err());
        assert!(SearchSpec::new(5, vec![0, 2]).is_err());
    }
}
