//! Monte-Carlo Lyapunov exponents of the KZ cocycle on the zero part.
//!
//! A random Teichmüller geodesic is modeled by its continued-fraction digits
//! `k₁, k₂, …`, drawn as a stationary sequence for the Gauss measure, and
//! followed through the orbit graph as alternating blocks `L^k₁ R^k₂ L^k₃ …`.
//! Exponents are normalized by the growth of the matching `SL(2,Z)` product,
//! so the tautological exponent is 1.

use nalgebra::{DMatrix, Vector2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{step_chain_map, Homology};
use crate::orbit::{apply_letter, orbit, OrbitGraph};
use crate::origami::Origami;
use crate::sl2::Letter;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LyapunovConfig {
    /// Continued-fraction blocks per chain.
    pub steps: u64,
    pub seed: u64,
    pub chains: usize,
    /// Matrix multiplications between re-orthonormalizations of the frame.
    pub cadence: u64,
    /// Batches for batch-mean error estimates.
    pub batches: usize,
}

impl LyapunovConfig {
    pub fn new(steps: u64, seed: u64) -> Self {
        LyapunovConfig { steps, seed, chains: 1, cadence: 32, batches: 20 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LyapunovEstimate {
    pub origami: Origami,
    /// `ν₂ ≥ … ≥ ν_g`; `ν₁ = 1` is not listed.
    pub exponents: Vec<f64>,
    pub std_errors: Vec<f64>,
    /// The lower half of the zero-part spectrum, negated and sorted decreasingly;
    /// equals `exponents` up to noise for a symplectic cocycle.
    pub mirrored_exponents: Vec<f64>,
    pub steps: u64,
    pub seed: u64,
    pub chains: usize,
    pub cadence: u64,
    /// Mean log-growth of the `SL(2,Z)` product per block.
    pub base_log_growth: f64,
    /// Per-batch exponent estimates, all chains concatenated.
    pub batch_means: Vec<Vec<f64>>,
}

/// Float matrices of single steps `L` and `R` on zero-part coordinates.
struct Cocycle {
    graph: OrbitGraph,
    dim: usize,
    /// `l_step[i]` maps coordinates at node `i` to coordinates at `L·i`.
    l_step: Vec<DMatrix<f64>>,
    r_step: Vec<DMatrix<f64>>,
    /// Return map around the `L`-cycle (resp. `R`-cycle) through each node, and its length.
    l_loop: Vec<(usize, DMatrix<f64>)>,
    r_loop: Vec<(usize, DMatrix<f64>)>,
    l_loop16: Vec<DMatrix<f64>>,
    r_loop16: Vec<DMatrix<f64>>,
}

impl Cocycle {
    fn new(o: &Origami) -> Result<Self> {
        use rayon::prelude::*;
        let graph = orbit(o)?;
        let homologies: Vec<Homology> = graph.nodes.par_iter().map(Homology::new).collect();
        let dim = homologies[0].basis.zero_part_basis.len();
        let step_matrices = |letter: Letter| -> Vec<DMatrix<f64>> {
            (0..graph.len())
                .into_par_iter()
                .map(|i| {
                    let node = &graph.nodes[i];
                    let j = graph.step(i, letter, true);
                    let raw = apply_letter(node, letter, true);
                    let sigma = raw.isomorphisms_to(&graph.nodes[j]).into_iter().next().expect("orbit edge");
                    let mut m = DMatrix::zeros(dim, dim);
                    for (col, b) in homologies[i].basis.zero_part_basis.iter().enumerate() {
                        let img = crate::homology::relabel_chain(&sigma, &step_chain_map(node, letter, true, b));
                        let x = homologies[j].solve_in(&homologies[j].basis.zero_part_basis, &img).expect("zero part is invariant");
                        for (row, v) in x.iter().enumerate() {
                            m[(row, col)] = num_traits::ToPrimitive::to_f64(v).unwrap_or(f64::NAN);
                        }
                    }
                    m
                })
                .collect()
        };
        let l_step = step_matrices(Letter::L);
        let r_step = step_matrices(Letter::R);
        let loops = |letter: Letter, steps: &[DMatrix<f64>]| -> Vec<(usize, DMatrix<f64>)> {
            (0..graph.len())
                .map(|i| {
                    let mut m = DMatrix::identity(dim, dim);
                    let mut node = i;
                    let mut len = 0;
                    loop {
                        m = &steps[node] * m;
                        node = graph.step(node, letter, true);
                        len += 1;
                        if node == i {
                            break;
                        }
                    }
                    (len, m)
                })
                .collect()
        };
        let l_loop = loops(Letter::L, &l_step);
        let r_loop = loops(Letter::R, &r_step);
        let l_loop16 = l_loop.iter().map(|(_, m)| matrix_pow(m, 16)).collect();
        let r_loop16 = r_loop.iter().map(|(_, m)| matrix_pow(m, 16)).collect();
        Ok(Cocycle { graph, dim, l_step, r_step, l_loop, r_loop, l_loop16, r_loop16 })
    }

    /// Applies `letter^k` from `node` to `frame`, calling `tick` after every
    /// multiplication (with `true` after a power of a cusp loop); returns the new node.
    fn apply_block(
        &self,
        node: usize,
        letter: Letter,
        k: u64,
        frame: &mut DMatrix<f64>,
        tick: &mut dyn FnMut(&mut DMatrix<f64>, bool),
    ) -> usize {
        let (steps, loops, loops16) = match letter {
            Letter::L => (&self.l_step, &self.l_loop, &self.l_loop16),
            Letter::R => (&self.r_step, &self.r_loop, &self.r_loop16),
        };
        let width = loops[node].0 as u64;
        let mut full = k / width;
        // parabolic growth is polynomial; chunks keep the frame well conditioned
        let chunk = (full / 1000).max(16);
        while full > 0 {
            let m = full.min(chunk);
            *frame = if m == 16 { &loops16[node] * &*frame } else { matrix_pow(&loops[node].1, m) * &*frame };
            tick(frame, true);
            full -= m;
        }
        let mut node = node;
        for _ in 0..k % width {
            *frame = &steps[node] * &*frame;
            node = self.graph.step(node, letter, true);
            tick(frame, false);
        }
        node
    }
}

fn matrix_pow(m: &DMatrix<f64>, mut e: u64) -> DMatrix<f64> {
    let mut acc = DMatrix::identity(m.nrows(), m.ncols());
    let mut base = m.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Stationary continued-fraction digits of a Gauss-random number, drawn from the
/// natural extension: `y` summarizes past digits, `x` is sampled given `y`.
pub struct GaussDigits<R: Rng> {
    rng: R,
    y: f64,
}

impl<R: Rng> GaussDigits<R> {
    pub fn new(mut rng: R) -> Self {
        let u: f64 = rng.random();
        GaussDigits { y: 2f64.powf(u) - 1.0, rng }
    }
}

impl<R: Rng> Iterator for GaussDigits<R> {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        // conditional law of x given y has cdf (1+y)x / (1+xy)
        let u: f64 = self.rng.random();
        let x = u / (1.0 + self.y - u * self.y);
        let k = (1.0 / x).floor().clamp(1.0, 1e15) as u64;
        self.y = 1.0 / (k as f64 + self.y);
        Some(k)
    }
}

struct ChainRun {
    /// Per batch: (sum of log stretches per frame direction, base log growth).
    batches: Vec<(Vec<f64>, f64)>,
}

fn run_chain(c: &Cocycle, cfg: &LyapunovConfig, seed: u64) -> ChainRun {
    let dim = c.dim;
    let mut digits = GaussDigits::new(ChaCha8Rng::seed_from_u64(seed));
    let mut frame = DMatrix::<f64>::identity(dim, dim);
    let mut base = Vector2::new(1.0f64, 0.0);
    let mut node = c.graph.base;
    let batch_len = (cfg.steps / cfg.batches as u64).max(1);
    let mut batches = Vec::new();
    let mut logs = vec![0.0; dim];
    let mut base_log = 0.0;
    let renormalize = |frame: &mut DMatrix<f64>, logs: &mut [f64]| {
        let qr = frame.clone().qr();
        let r = qr.r();
        for (i, l) in logs.iter_mut().enumerate() {
            *l += r[(i, i)].abs().ln();
        }
        let mut q = qr.q();
        // keep orientation so that the frame is continuous
        for i in 0..dim {
            if r[(i, i)] < 0.0 {
                q.column_mut(i).neg_mut();
            }
        }
        *frame = q;
    };
    let mut letter = Letter::L;
    let mut since = 0u64;
    for step in 1..=cfg.steps {
        let k = digits.next().expect("infinite");
        let mut tick = |frame: &mut DMatrix<f64>, force: bool| {
            since += 1;
            if force || since >= cfg.cadence {
                renormalize(frame, &mut logs);
                since = 0;
            }
        };
        node = c.apply_block(node, letter, k, &mut frame, &mut tick);
        let kf = k as f64;
        base = match letter {
            Letter::L => Vector2::new(base.x + kf * base.y, base.y),
            Letter::R => Vector2::new(base.x, base.y + kf * base.x),
        };
        let norm = base.norm();
        base_log += norm.ln();
        base /= norm;
        letter = letter.other();
        if step % batch_len == 0 || step == cfg.steps {
            renormalize(&mut frame, &mut logs);
            since = 0;
        }
        if step % batch_len == 0 && batches.len() < cfg.batches {
            batches.push((std::mem::replace(&mut logs, vec![0.0; dim]), std::mem::replace(&mut base_log, 0.0)));
        }
    }
    ChainRun { batches }
}

pub fn estimate_exponents(o: &Origami, cfg: &LyapunovConfig) -> Result<LyapunovEstimate> {
    use rayon::prelude::*;
    if cfg.steps == 0 || cfg.cadence == 0 || cfg.batches == 0 || cfg.chains == 0 {
        return Err(Error::Precondition("steps, cadence, batches and chains must be positive".into()));
    }
    let empty = |base_log_growth| LyapunovEstimate {
        origami: o.clone(),
        exponents: Vec::new(),
        std_errors: Vec::new(),
        mirrored_exponents: Vec::new(),
        steps: cfg.steps,
        seed: cfg.seed,
        chains: cfg.chains,
        cadence: cfg.cadence,
        base_log_growth,
        batch_means: Vec::new(),
    };
    if o.genus() < 2 {
        return Ok(empty(0.0));
    }
    let cocycle = Cocycle::new(o)?;
    let dim = cocycle.dim;
    let runs: Vec<ChainRun> = (0..cfg.chains as u64)
        .into_par_iter()
        .map(|i| run_chain(&cocycle, cfg, cfg.seed.wrapping_add(i)))
        .collect();
    let all: Vec<&(Vec<f64>, f64)> = runs.iter().flat_map(|r| r.batches.iter()).collect();
    let total_base: f64 = all.iter().map(|b| b.1).sum();
    if total_base <= 0.0 {
        return Err(Error::Precondition("base product did not grow".into()));
    }
    let total: Vec<f64> = (0..dim).map(|i| all.iter().map(|b| b.0[i]).sum::<f64>() / total_base).collect();
    let batch_means: Vec<Vec<f64>> = all.iter().map(|(l, b)| l.iter().map(|x| x / b).collect()).collect();
    let half = dim / 2;
    let nb = batch_means.len() as f64;
    let std_errors: Vec<f64> = (0..half)
        .map(|i| {
            let mean = batch_means.iter().map(|b| b[i]).sum::<f64>() / nb;
            let var = batch_means.iter().map(|b| (b[i] - mean).powi(2)).sum::<f64>() / (nb - 1.0).max(1.0);
            (var / nb).sqrt()
        })
        .collect();
    let steps_total = cfg.steps * cfg.chains as u64;
    Ok(LyapunovEstimate {
        origami: o.clone(),
        exponents: total[..half].to_vec(),
        std_errors,
        mirrored_exponents: total[half..].iter().rev().map(|x| -x).collect(),
        steps: cfg.steps,
        seed: cfg.seed,
        chains: cfg.chains,
        cadence: cfg.cadence,
        base_log_growth: total_base / steps_total as f64,
        batch_means,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvergenceReport {
    /// Running estimates after each batch.
    pub running: Vec<Vec<f64>>,
    /// `|final − estimate at half time|` per exponent.
    pub tail_drift: Vec<f64>,
    /// Standard error divided by the exponent.
    pub relative_errors: Vec<f64>,
    pub converged: bool,
}

/// Running estimates from the batch means, flagging drift beyond three standard errors
/// or an exponent that is not resolved from zero.
pub fn convergence_diagnostics(est: &LyapunovEstimate) -> ConvergenceReport {
    let half = est.exponents.len();
    let mut running = Vec::new();
    let mut acc = vec![0.0; half];
    for (k, b) in est.batch_means.iter().enumerate() {
        for i in 0..half {
            acc[i] += b[i];
        }
        running.push(acc.iter().map(|x| x / (k + 1) as f64).collect::<Vec<f64>>());
    }
    let tail_drift: Vec<f64> = match (running.get(running.len().saturating_sub(1) / 2), running.last()) {
        (Some(mid), Some(last)) => mid.iter().zip(last).map(|(a, b)| (a - b).abs()).collect(),
        _ => vec![0.0; half],
    };
    let relative_errors: Vec<f64> = est.exponents.iter().zip(&est.std_errors).map(|(x, e)| e / x.abs()).collect();
    let converged = tail_drift.iter().zip(&est.std_errors).all(|(d, e)| *d <= 3.0 * e.max(1e-12) * (2f64).sqrt())
        && relative_errors.iter().all(|r| *r < 0.5);
    ConvergenceReport { running, tail_drift, relative_errors, converged }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::origami::fixtures::s3;

    #[test]
    fn gauss_digits_follow_the_gauss_law() {
        let n = 200_000;
        let mut counts = [0usize; 4];
        for k in GaussDigits::new(ChaCha8Rng::seed_from_u64(1)).take(n) {
            if k <= 3 {
                counts[k as usize] += 1;
            }
        }
        for (k, &count) in counts.iter().enumerate().skip(1) {
            let kf = k as f64;
            let p = (1.0 + 1.0 / (kf * (kf + 2.0))).log2();
            let freq = count as f64 / n as f64;
            assert!((freq - p).abs() < 0.005, "digit {k}: {freq} vs {p}");
        }
    }

    #[test]
    fn torus_is_empty() {
        let e = estimate_exponents(&Origami::torus(), &LyapunovConfig::new(1000, 0)).unwrap();
        assert!(e.exponents.is_empty());
    }

    #[test]
    fn deterministic_per_seed() {
        let cfg = LyapunovConfig::new(20_000, 7);
        let a = estimate_exponents(&s3(), &cfg).unwrap();
        let b = estimate_exponents(&s3(), &cfg).unwrap();
        assert_eq!(a.exponents, b.exponents);
        assert_eq!(a.std_errors, b.std_errors);
    }

    #[test]
    fn s3_short_run_sum_rule() {
        // 1 + ν₂ + ν₃ = 5/3 for this surface
        let e = estimate_exponents(&s3(), &LyapunovConfig::new(100_000, 3)).unwrap();
        let sum: f64 = e.exponents.iter().sum();
        assert!((sum - 2.0 / 3.0).abs() < 0.03, "{:?}", e.exponents);
        assert!(e.base_log_growth > 0.0);
        for (a, b) in e.exponents.iter().zip(&e.mirrored_exponents) {
            assert!((a - b).abs() < 0.02, "{:?} {:?}", e.exponents, e.mirrored_exponents);
        }
    }
}
