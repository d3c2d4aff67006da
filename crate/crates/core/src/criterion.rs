//! The positivity and simplicity test for the KZ spectrum: characteristic
//! polynomials of two hyperbolic affine elements on the zero part, their
//! Galois data, and the combined verdict with the Forni rank test.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cylinders::{forni_hypothesis_on, ForniReport};
use crate::error::{Error, Result};
use crate::galois::{analyze_reciprocal, fields_disjoint_report, hyperoctahedral_order, Certification, Disjointness, ReciprocalAnalysis};
use crate::homology::{kz_action, Homology};
use crate::linalg::QMatrix;
use crate::orbit::{orbit, OrbitGraph};
use crate::origami::Origami;
use crate::poly::IntPolynomial;
use crate::sl2::{Letter, Sl2Matrix, Word};

/// Primes sampled for Frobenius evidence beyond the quartic case.
pub const DEFAULT_EVIDENCE_PRIMES: usize = 400;

/// A positive word in `L`, `R` together with its matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineWord {
    pub letters: Word,
    pub sl2: Sl2Matrix,
    pub trace: i64,
}

impl AffineWord {
    pub fn new(letters: Word) -> Result<Self> {
        if !letters.is_positive() || letters.is_empty() {
            return Err(Error::NotDirectHyperbolic(letters.to_string()));
        }
        let sl2 = letters.matrix();
        Ok(AffineWord { trace: sl2.trace(), sl2, letters })
    }

    pub fn parse(text: &str) -> Result<Self> {
        AffineWord::new(Word::parse(text)?)
    }

    pub fn is_direct_hyperbolic(&self) -> bool {
        self.letters.is_positive() && self.trace > 2
    }
}

impl fmt::Display for AffineWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.letters.fmt(f)
    }
}

pub fn is_direct_hyperbolic(w: &Word) -> bool {
    w.is_positive() && w.matrix().trace() > 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conditions {
    /// The first characteristic polynomial is irreducible.
    pub irreducible: bool,
    /// Its splitting field is totally real of degree `2^(g-1) (g-1)!`.
    pub totally_real_full_degree: bool,
    /// The two splitting fields meet only in Q.
    pub no_common_invariant_subspace: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MmyCertificate {
    pub origami: Origami,
    pub genus: usize,
    pub phi1: AffineWord,
    pub phi2: AffineWord,
    /// Action of `phi1` on the zero part.
    pub matrix1: QMatrix,
    /// Action of `phi2` squared on the zero part.
    pub matrix2: QMatrix,
    pub char_poly1: IntPolynomial,
    pub char_poly2: IntPolynomial,
    pub analysis1: Option<ReciprocalAnalysis>,
    pub analysis2: Option<ReciprocalAnalysis>,
    pub disjointness: Option<Disjointness>,
    pub conditions: Conditions,
    pub verdict: Verdict,
    pub certification_level: Certification,
    pub toolkit_version: String,
}

/// The checks on two zero-part matrices; everything in a certificate derives from here.
fn judge(genus: usize, matrix1: &QMatrix, matrix2: &QMatrix, primes: usize) -> Result<Judgement> {
    let char_poly1 = IntPolynomial::charpoly(matrix1)?;
    let char_poly2 = IntPolynomial::charpoly(matrix2)?;
    let analyze = |p: &IntPolynomial| -> Result<Option<ReciprocalAnalysis>> {
        if !p.is_reciprocal() {
            return Err(Error::NotReciprocal(p.to_string()));
        }
        if p.degree() == 0 || !p.is_irreducible() {
            return Ok(None);
        }
        analyze_reciprocal(p, primes).map(Some)
    };
    let analysis1 = analyze(&char_poly1)?;
    let analysis2 = analyze(&char_poly2)?;
    let target = hyperoctahedral_order(genus.saturating_sub(1));

    let mut level = Certification::Certified;
    let irreducible = analysis1.is_some();
    let totally_real_full_degree = match &analysis1 {
        Some(a) => {
            level = level.min(a.certification);
            a.totally_real && a.splitting_degree.exact() == Some(target)
        }
        None => false,
    };
    let disjointness = match (&analysis1, &analysis2) {
        (Some(a), Some(b)) => {
            level = level.min(b.certification);
            let d = fields_disjoint_report(a, b)?;
            level = level.min(d.certification);
            Some(d)
        }
        _ => None,
    };
    let conditions = Conditions {
        irreducible,
        totally_real_full_degree,
        no_common_invariant_subspace: disjointness.as_ref().is_some_and(|d| d.disjoint),
    };
    let all = conditions.irreducible && conditions.totally_real_full_degree && conditions.no_common_invariant_subspace;
    let verdict = if all && level > Certification::Inconclusive {
        Verdict::Pass
    } else if !conditions.irreducible {
        Verdict::Fail
    } else if level == Certification::Inconclusive {
        Verdict::Inconclusive
    } else {
        Verdict::Fail
    };
    Ok(Judgement { char_poly1, char_poly2, analysis1, analysis2, disjointness, conditions, verdict, level })
}

struct Judgement {
    char_poly1: IntPolynomial,
    char_poly2: IntPolynomial,
    analysis1: Option<ReciprocalAnalysis>,
    analysis2: Option<ReciprocalAnalysis>,
    disjointness: Option<Disjointness>,
    conditions: Conditions,
    verdict: Verdict,
    level: Certification,
}

pub fn mmy_check(o: &Origami, w1: &AffineWord, w2: &AffineWord) -> Result<MmyCertificate> {
    mmy_check_with(o, w1, w2, DEFAULT_EVIDENCE_PRIMES)
}

pub fn mmy_check_with(o: &Origami, w1: &AffineWord, w2: &AffineWord, primes: usize) -> Result<MmyCertificate> {
    for w in [w1, w2] {
        if !w.is_direct_hyperbolic() {
            return Err(Error::NotDirectHyperbolic(w.to_string()));
        }
    }
    let h = Homology::new(o);
    let m1 = kz_action(&h, &w1.letters)?.matrix;
    let m2 = kz_action(&h, &w2.letters)?.matrix;
    let m2sq = &m2 * &m2;
    let genus = h.genus();
    let j = judge(genus, &m1, &m2sq, primes)?;
    Ok(MmyCertificate {
        origami: o.clone(),
        genus,
        phi1: w1.clone(),
        phi2: w2.clone(),
        matrix1: m1,
        matrix2: m2sq,
        char_poly1: j.char_poly1,
        char_poly2: j.char_poly2,
        analysis1: j.analysis1,
        analysis2: j.analysis2,
        disjointness: j.disjointness,
        conditions: j.conditions,
        verdict: j.verdict,
        certification_level: j.level,
        toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

/// Re-derives conditions and verdict from the stored matrices alone.
pub fn recheck(cert: &MmyCertificate) -> Result<(Conditions, Verdict, Certification)> {
    let primes = [&cert.analysis1, &cert.analysis2]
        .into_iter()
        .flatten()
        .filter_map(|a| a.evidence.as_ref().map(|e| e.primes_sampled))
        .max()
        .unwrap_or(DEFAULT_EVIDENCE_PRIMES);
    let j = judge(cert.genus, &cert.matrix1, &cert.matrix2, primes)?;
    if j.char_poly1 != cert.char_poly1 || j.char_poly2 != cert.char_poly2 {
        return Err(Error::Precondition("stored characteristic polynomials do not match the matrices".into()));
    }
    Ok((j.conditions, j.verdict, j.level))
}

/// Positive words built from blocks `L^e`, `R^e` with even `2 ≤ e ≤ max_exponent`,
/// alternating letters, by increasing total length and then lexicographically.
pub fn block_words(max_exponent: u32, max_length: u64) -> impl Iterator<Item = Word> {
    let exps: Vec<i64> = (2..=max_exponent as i64).step_by(2).collect();
    (1..=max_length).flat_map(move |len| {
        let mut out: Vec<Word> = Vec::new();
        for start in [Letter::L, Letter::R] {
            compositions(len as i64, &exps, &mut Vec::new(), &mut |parts| {
                let runs = parts.iter().enumerate().map(|(k, &e)| (if k % 2 == 0 { start } else { start.other() }, e));
                out.push(Word::from_runs(runs));
            });
        }
        out.sort_by_key(|w| w.to_string());
        out
    })
}

fn compositions(rest: i64, parts: &[i64], acc: &mut Vec<i64>, emit: &mut dyn FnMut(&[i64])) {
    if rest == 0 {
        if !acc.is_empty() {
            emit(acc);
        }
        return;
    }
    for &p in parts {
        if p <= rest {
            acc.push(p);
            compositions(rest - p, parts, acc, emit);
            acc.pop();
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_block_exponent: u32,
    pub max_word_length: u64,
    /// Candidate words (after the loop filter) examined as the first element.
    pub max_candidates: usize,
}

impl SearchBudget {
    pub fn new(max_block_exponent: u32) -> Self {
        SearchBudget { max_block_exponent, max_word_length: 4 * max_block_exponent as u64 + 8, max_candidates: 400 }
    }
}

/// Hyperbolic block words that close up at the base of the orbit graph.
pub fn loop_candidates(graph: &OrbitGraph, budget: &SearchBudget) -> Vec<Word> {
    block_words(budget.max_block_exponent, budget.max_word_length)
        .filter(|w| is_direct_hyperbolic(w) && graph.act(graph.base, w) == graph.base)
        .take(budget.max_candidates)
        .collect()
}

/// First pair in canonical order passing [`mmy_check`]. Deterministic under parallelism.
pub fn search_hyperbolic_pair(o: &Origami, budget: &SearchBudget) -> Result<Option<MmyCertificate>> {
    use rayon::prelude::*;
    let graph = orbit(o)?;
    let h = Homology::new(o);
    if h.basis.zero_part_basis.is_empty() {
        return Ok(None);
    }
    let genus = h.genus();
    let target = hyperoctahedral_order(genus - 1);
    let words = loop_candidates(&graph, budget);
    let matrices: Vec<QMatrix> = words
        .par_iter()
        .map(|w| kz_action(&h, w).map(|m| m.matrix))
        .collect::<Result<Vec<_>>>()?;
    // condition 1 and 2 for the first word
    let good_first: Vec<bool> = matrices
        .par_iter()
        .map(|m| {
            let Ok(p) = IntPolynomial::charpoly(m) else { return false };
            if !p.is_irreducible() {
                return false;
            }
            analyze_reciprocal(&p, DEFAULT_EVIDENCE_PRIMES)
                .is_ok_and(|a| a.totally_real && a.splitting_degree.exact() == Some(target))
        })
        .collect();
    for (i, w1) in words.iter().enumerate().filter(|(i, _)| good_first[*i]) {
        let a1 = AffineWord::new(w1.clone())?;
        let found = words
            .par_iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .find_first(|(_, w2)| {
                AffineWord::new((*w2).clone())
                    .and_then(|a2| mmy_check(o, &a1, &a2))
                    .is_ok_and(|c| c.verdict == Verdict::Pass)
            });
        if let Some((_, w2)) = found {
            return mmy_check(o, &a1, &AffineWord::new(w2.clone())?).map(Some);
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub origami: Origami,
    pub genus: usize,
    pub forni: ForniReport,
    pub mmy: Option<MmyCertificate>,
    /// Forni's rank condition fails while the spectrum is certified simple and positive.
    pub counterexample_to_converse: bool,
    pub status: Vec<String>,
}

/// Forni test plus an MMY certificate, from given words or by search.
pub fn counterexample_report(o: &Origami, words: Option<(AffineWord, AffineWord)>, budget: &SearchBudget) -> Result<CounterexampleReport> {
    let graph = orbit(o)?;
    let forni = forni_hypothesis_on(&graph);
    let genus = o.genus();
    let mut status = Vec::new();
    let mmy = if genus < 2 {
        status.push("zero part is trivial; criterion vacuous".to_string());
        None
    } else {
        match words {
            Some((w1, w2)) => Some(mmy_check(o, &w1, &w2)?),
            None => {
                let found = search_hyperbolic_pair(o, budget)?;
                if found.is_none() {
                    status.push(format!("no passing pair within block exponent {}", budget.max_block_exponent));
                }
                found
            }
        }
    };
    let pass = mmy.as_ref().is_some_and(|c| c.verdict == Verdict::Pass);
    Ok(CounterexampleReport {
        origami: o.clone(),
        genus,
        counterexample_to_converse: forni.max_rank < genus && pass,
        forni,
        mmy,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::origami::fixtures::s3;

    fn w(s: &str) -> AffineWord {
        AffineWord::parse(s).unwrap()
    }

    #[test]
    fn direct_hyperbolic_examples() {
        assert!(!w("L").is_direct_hyperbolic());
        assert_eq!(w("L").trace, 2);
        let phi1 = w("L8R2L2R2");
        assert!(phi1.is_direct_hyperbolic());
        assert_eq!(phi1.trace, 106);
        assert!(w("L6R2L2R2").is_direct_hyperbolic());
        assert!(AffineWord::parse("L-1R").is_err());
    }

    #[test]
    fn s3_phi1_char_poly() {
        let c = mmy_check(&s3(), &w("L8R2L2R2"), &w("L6R2L2R4")).unwrap();
        assert_eq!(c.char_poly1.to_string(), "x^4 - 2*x^3 - 30*x^2 - 2*x + 1");
        assert_eq!(c.char_poly2.to_string(), "x^4 - 80*x^3 + 1438*x^2 - 80*x + 1");
        assert_eq!(c.verdict, Verdict::Pass);
        let (cond, verdict, level) = recheck(&c).unwrap();
        assert_eq!((cond, verdict, level), (c.conditions.clone(), c.verdict, c.certification_level));
    }

    #[test]
    fn identical_words_fail_condition_three() {
        let c = mmy_check(&s3(), &w("L8R2L2R2"), &w("L8R2L2R2")).unwrap();
        assert!(c.conditions.irreducible && c.conditions.totally_real_full_degree);
        assert!(!c.conditions.no_common_invariant_subspace);
        assert_eq!(c.verdict, Verdict::Fail);
    }

    #[test]
    fn rotations_share_char_poly() {
        let h = Homology::new(&s3());
        let graph = orbit(&s3()).unwrap();
        let phi = Word::parse("L8R2L2R2").unwrap();
        let base = IntPolynomial::charpoly(&kz_action(&h, &phi).unwrap().matrix).unwrap();
        for k in 1..4 {
            let rot = phi.rotate(k);
            // a rotation is a loop at another node; its matrix there is conjugate
            let node = graph.act(graph.base, &Word::from_runs(phi.runs()[k..].iter().copied()));
            let hn = Homology::new(&graph.nodes[node]);
            let p = IntPolynomial::charpoly(&kz_action(&hn, &rot).unwrap().matrix).unwrap();
            assert_eq!(p, base, "rotation {rot}");
        }
    }

    #[test]
    fn block_word_order() {
        let first: Vec<String> = block_words(4, 6).take(8).map(|w| w.to_string()).collect();
        assert_eq!(first, vec!["L2", "R2", "L2R2", "L4", "R2L2", "R4", "L2R2L2", "L2R4"]);
    }

    #[test]
    fn torus_has_no_pair() {
        assert!(search_hyperbolic_pair(&Origami::torus(), &SearchBudget::new(8)).unwrap().is_none());
    }

    #[test]
    fn non_stabilizing_word_is_rejected() {
        // L3R2 is outside the Veech group of S3
        assert!(mmy_check(&s3(), &w("L3R2"), &w("L8R2L2R2")).is_err());
    }
}
