//! Quasi-Bernoulli ratios and the probes that witness their failure.

use crate::error::{Error, Result};
use crate::measures::{log_value, MatrixMeasure, MultinacciModel};

#[derive(Clone, Debug)]
pub struct QuasiBernoulliReport {
    pub max_len: usize,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub argmin: (Vec<usize>, Vec<usize>),
    pub argmax: (Vec<usize>, Vec<usize>),
    /// pairs skipped because a factor vanishes
    pub skipped: u64,
}

fn decode(code: usize, len: usize, s: usize) -> Vec<usize> {
    let mut w = vec![0; len];
    let mut c = code;
    for i in (0..len).rev() {
        w[i] = c % s;
        c /= s;
    }
    w
}

/// Extremes of η⟦ww′⟧/(η⟦w⟧η⟦w′⟧) over nonempty w, w′ with |w| + |w′| ≤ max_len.
pub fn quasi_bernoulli(measure: &MatrixMeasure<f64>, max_len: usize) -> Result<QuasiBernoulliReport> {
    let s = measure.letters();
    let total: usize = (1..=max_len).map(|l| s.pow(l as u32)).sum();
    if max_len < 2 || total > 1 << 24 {
        return Err(Error::Budget(format!("{total} words up to length {max_len}")));
    }
    // values[l][code], code = base-s digits of the word
    let mut values: Vec<Vec<f64>> = vec![vec![measure.eval_unchecked(&[])]];
    for l in 1..=max_len {
        let mut v = Vec::with_capacity(s.pow(l as u32));
        for code in 0..s.pow(l as u32) {
            v.push(measure.eval_unchecked(&decode(code, l, s)));
        }
        values.push(v);
    }
    let mut rep = QuasiBernoulliReport {
        max_len,
        min_ratio: f64::INFINITY,
        max_ratio: 0.0,
        argmin: (vec![], vec![]),
        argmax: (vec![], vec![]),
        skipped: 0,
    };
    for a in 1..max_len {
        for b in 1..=max_len - a {
            let shift = s.pow(b as u32);
            for (ca, &va) in values[a].iter().enumerate() {
                for (cb, &vb) in values[b].iter().enumerate() {
                    let joint = values[a + b][ca * shift + cb];
                    if va <= 0.0 || vb <= 0.0 {
                        rep.skipped += 1;
                        continue;
                    }
                    let r = joint / (va * vb);
                    if r < rep.min_ratio {
                        rep.min_ratio = r;
                        rep.argmin = (decode(ca, a, s), decode(cb, b, s));
                    }
                    if r > rep.max_ratio {
                        rep.max_ratio = r;
                        rep.argmax = (decode(ca, a, s), decode(cb, b, s));
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// η⟦w·cⁿ⁻¹⟧/(η⟦w⟧η⟦cⁿ⁻¹⟧) for each n.
pub fn witness_ratios(measure: &MatrixMeasure<f64>, w: &[usize], c: usize, ns: &[usize]) -> Result<Vec<f64>> {
    ns.iter()
        .map(|&n| {
            if n < 2 {
                return Err(Error::Hypothesis("witness needs n ≥ 2".into()));
            }
            let run = vec![c; n - 1];
            let joint: Vec<usize> = w.iter().chain(&run).copied().collect();
            let l = log_value(measure, &joint)? - log_value(measure, w)? - log_value(measure, &run)?;
            Ok(l.exp())
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeVerdict {
    /// r_n stays bounded away from 0: no subexponential K_n exists on this net
    Persistent,
    /// r_n decays at least like 1/n
    Vanishing,
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub m: usize,
    pub p: f64,
    /// letter paired with m in the probe word mⁿ cⁿ
    pub partner: usize,
    pub ns: Vec<usize>,
    pub r: Vec<f64>,
    pub floor: f64,
    pub verdict: ProbeVerdict,
    /// whether (m, p) is in the regime m ≥ 3, p < q
    pub in_hypothesis: bool,
}

/// r_n = |log(μ*⟦mⁿ(m+1)ⁿ⟧/(μ*⟦mⁿ⟧μ*⟦(m+1)ⁿ⟧))|/n; for m = 2 the letter 1 replaces m + 1.
pub fn counterexample_probe(m: usize, p: f64, ns: &[usize]) -> Result<ProbeReport> {
    if ns.len() < 2 {
        return Err(Error::Hypothesis("need at least two values of n".into()));
    }
    let model = MultinacciModel::new(m, p)?;
    let star = model.mu_star();
    let partner = if m >= 3 { m + 1 } else { 1 };
    let mut r = Vec::new();
    for &n in ns {
        let a = vec![m; n];
        let b = vec![partner; n];
        let ab: Vec<usize> = a.iter().chain(&b).copied().collect();
        let l = log_value(&star, &ab)? - log_value(&star, &a)? - log_value(&star, &b)?;
        r.push(l.abs() / n as f64);
    }
    let floor = r.iter().cloned().fold(f64::INFINITY, f64::min);
    let (first, last) = (r[0], *r.last().unwrap());
    let decay = (ns[0] as f64 / *ns.last().unwrap() as f64).sqrt();
    // 1/n decay over the window shrinks r by n_first/n_last; persistence keeps it near r_first
    let verdict = if last > decay * first && floor > 0.0 { ProbeVerdict::Persistent } else { ProbeVerdict::Vanishing };
    Ok(ProbeReport { m, p, partner, ns: ns.to_vec(), r, floor, verdict, in_hypothesis: m >= 3 && p < 0.5 })
}
