//! Sup-norm gaps g_n = ‖φ_n - Φ‖∞ for μ* and their decay class.
//!
//! Off {0, m}ⁿ the two potentials agree exactly (the rank-one P_j fixes the
//! direction), so only {0, m}ⁿ words are swept. The sup over continuations is
//! taken over a fixed set of tails: the canonical letter 1, long 0 and m runs
//! closed by 1, and seeded random {0, m}-runs closed by a random j ∉ {0, m}.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::potential::{LimitPotential, Transfer};
use crate::error::{Error, Result};
use crate::fit::{line_fit, LineFit};
use crate::measures::MultinacciModel;

#[derive(Clone, Copy, Debug)]
pub struct GapConfig {
    pub tail_block: usize,
    pub random_tails: usize,
    pub max_random_len: usize,
    pub seed: u64,
    /// 2ⁿ words per level
    pub max_n: usize,
}

impl Default for GapConfig {
    fn default() -> Self {
        GapConfig { tail_block: 80, random_tails: 100, max_random_len: 40, seed: 1, max_n: 22 }
    }
}

pub fn sample_tails(m: usize, cfg: &GapConfig) -> Vec<Vec<usize>> {
    let letters = m * (m - 1) + 1;
    let mut tails = vec![vec![1]];
    let run = |c: usize| {
        let mut t = vec![c; cfg.tail_block];
        t.push(1);
        t
    };
    tails.push(run(0));
    tails.push(run(m));
    if m >= 3 {
        tails.push(vec![m + 1]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let closers: Vec<usize> = (1..letters).filter(|&j| j != m).collect();
    for _ in 0..cfg.random_tails {
        let len = rng.gen_range(1..=cfg.max_random_len);
        let mut t: Vec<usize> = (0..len).map(|_| if rng.gen_bool(0.5) { 0 } else { m }).collect();
        t.push(closers[rng.gen_range(0..closers.len())]);
        tails.push(t);
    }
    tails
}

#[derive(Clone, Debug)]
pub struct GapStudy {
    m: usize,
    transfer: Transfer,
    tail_vectors: Vec<[f64; 2]>,
    max_n: usize,
}

fn mat2(m: &crate::transmat::Matrix<f64>) -> [[f64; 2]; 2] {
    [[*m.get(0, 0), *m.get(0, 1)], [*m.get(1, 0), *m.get(1, 1)]]
}

impl GapStudy {
    pub fn new(model: &MultinacciModel<f64>, cfg: &GapConfig) -> Result<Self> {
        let pot = LimitPotential::new(model.m(), *model.p())?;
        let mats = model.p_family().matrices().iter().map(mat2).collect();
        let r = model.r_vector();
        let transfer = Transfer::new(&pot, mats, [r[0], r[1]]);
        let tail_vectors =
            sample_tails(model.m(), cfg).iter().map(|t| transfer.tail_vector(t)).collect::<Result<_>>()?;
        Ok(GapStudy { m: model.m(), transfer, tail_vectors, max_n: cfg.max_n })
    }

    pub fn transfer(&self) -> &Transfer {
        &self.transfer
    }

    pub fn tails(&self) -> usize {
        self.tail_vectors.len()
    }

    fn word(&self, n: usize, code: u64) -> Vec<usize> {
        (0..n).map(|i| if code >> (n - 1 - i) & 1 == 1 { self.m } else { 0 }).collect()
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.max_n {
            return Err(Error::Budget(format!("n = {n} outside 1..={}", self.max_n)));
        }
        Ok(())
    }

    /// (φ_n(w), min_t Φ(w t), max_t Φ(w t)) for w ∈ {0, m}ⁿ.
    fn spread(&self, w: &[usize]) -> (f64, f64, f64) {
        let t = &self.transfer;
        let phin = t.log_ratio(w[0], t.push(&w[1..], t.r));
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for y in &self.tail_vectors {
            let v = t.log_ratio(w[0], t.push(&w[1..], *y));
            lo = lo.min(v);
            hi = hi.max(v);
        }
        (phin, lo, hi)
    }

    /// g_n = max over {0, m}ⁿ words and sampled tails of |φ_n - Φ|.
    pub fn gap(&self, n: usize) -> Result<f64> {
        self.check_n(n)?;
        Ok((0..1u64 << n)
            .into_par_iter()
            .map(|code| {
                let (phin, lo, hi) = self.spread(&self.word(n, code));
                (phin - lo).abs().max((hi - phin).abs())
            })
            .reduce(|| 0.0, f64::max))
    }

    /// Sampled Var_n(Φ): the largest spread of Φ over continuations of an n-prefix.
    pub fn variation(&self, n: usize) -> Result<f64> {
        self.check_n(n)?;
        Ok((0..1u64 << n)
            .into_par_iter()
            .map(|code| {
                let (_, lo, hi) = self.spread(&self.word(n, code));
                hi - lo
            })
            .reduce(|| 0.0, f64::max))
    }

    /// Largest |log μ*⟦w⟧ - Σ_k Φ(σ^k w 1)| over all w ∈ Jⁿ.
    pub fn sandwich(&self, n: usize, log_kn: f64, budget: u64) -> Result<SandwichCheck> {
        let letters = self.transfer.mats.len();
        let total = (letters as u64).checked_pow(n as u32).filter(|&t| t <= budget);
        let total = total.ok_or_else(|| Error::Budget(format!("{letters}^{n} words")))?;
        let worst = (0..total)
            .into_par_iter()
            .map(|mut code| {
                let mut w = vec![0usize; n + 1];
                for i in (0..n).rev() {
                    w[i] = (code % letters as u64) as usize;
                    code /= letters as u64;
                }
                w[n] = 1;
                let t = &self.transfer;
                let mut y = t.r;
                let mut log_mu = 0.0;
                for &c in w[..n].iter().rev() {
                    log_mu += t.log_ratio(c, y);
                    y = t.apply(c, y);
                }
                let birkhoff: f64 = (0..n).map(|k| t.phi(&w[k..]).expect("closed by 1")).sum();
                (log_mu - birkhoff).abs()
            })
            .reduce(|| 0.0, f64::max);
        Ok(SandwichCheck { n, worst_log_deviation: worst, log_kn, holds: worst <= log_kn + 1e-9 })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SandwichCheck {
    pub n: usize,
    pub worst_log_deviation: f64,
    pub log_kn: f64,
    pub holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DecayClass {
    Exponential { rate: f64 },
    Harmonic { k: f64 },
    Divergent,
}

impl DecayClass {
    pub fn name(&self) -> &'static str {
        match self {
            DecayClass::Exponential { .. } => "exponential",
            DecayClass::Harmonic { .. } => "harmonic",
            DecayClass::Divergent => "divergent",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub ns: Vec<usize>,
    pub gaps: Vec<f64>,
    /// K_n = exp(Σ_{k≤n} g_k)
    pub k_n: Vec<f64>,
    pub window: (usize, usize),
    pub class: DecayClass,
    pub log_fit: LineFit,
    /// (max - min)/max of n g_n over the window
    pub harmonic_variation: f64,
    pub rho: f64,
}

/// Harmonic when n g_n varies by at most 25%; else exponential when log g_n is
/// linear in n with R² ≥ 0.98 and slope < -0.01; else divergent.
pub fn classify(ns: &[usize], gaps: &[f64]) -> (DecayClass, LineFit, f64) {
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let ys: Vec<f64> = gaps.iter().map(|g| g.max(1e-300).ln()).collect();
    let fit = line_fit(&xs, &ys);
    let ng: Vec<f64> = ns.iter().zip(gaps).map(|(&n, g)| n as f64 * g).collect();
    let hi = ng.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = ng.iter().cloned().fold(f64::INFINITY, f64::min);
    let variation = if hi > 0.0 { (hi - lo) / hi } else { 0.0 };
    let class = if hi > 0.0 && variation <= 0.25 {
        DecayClass::Harmonic { k: ng.iter().sum::<f64>() / ng.len() as f64 }
    } else if fit.r2 >= 0.98 && fit.slope < -0.01 {
        DecayClass::Exponential { rate: fit.slope }
    } else {
        DecayClass::Divergent
    };
    (class, fit, variation)
}

impl GapStudy {
    pub fn report(&self, nmax: usize, window_start: usize) -> Result<ConvergenceReport> {
        if window_start + 2 > nmax {
            return Err(Error::Budget("fit window needs at least three levels".into()));
        }
        let ns: Vec<usize> = (1..=nmax).collect();
        let gaps = ns.iter().map(|&n| self.gap(n)).collect::<Result<Vec<_>>>()?;
        let mut acc = 0.0;
        let k_n = gaps
            .iter()
            .map(|g| {
                acc += g;
                acc.exp()
            })
            .collect();
        let w = window_start - 1..nmax;
        let (class, log_fit, harmonic_variation) = classify(&ns[w.clone()], &gaps[w]);
        let alpha = self.transfer_alpha();
        Ok(ConvergenceReport {
            ns,
            gaps,
            k_n,
            window: (window_start, nmax),
            class,
            log_fit,
            harmonic_variation,
            rho: alpha.sqrt().min(1.0 / alpha.sqrt()),
        })
    }

    fn transfer_alpha(&self) -> f64 {
        // P_0 = p^m [[1, 0], [α, α]]
        let p0 = &self.transfer.mats[0];
        p0[1][1] / p0[0][0]
    }
}
