use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measures::MatrixMeasure;

/// Stopping-time covers of a net: a word is kept once its total exponent
/// reaches E, so every kept interval has length base·β^{-e} with E ≤ e < E + max exponent.
#[derive(Clone, Debug)]
pub struct PartitionScheme {
    pub exponents: Vec<u32>,
    pub log_beta: f64,
    /// log of the base interval length
    pub log_base: f64,
    /// cap on the number of words per cover
    pub budget: usize,
}

impl PartitionScheme {
    pub fn new(exponents: Vec<u32>, beta: f64, base: f64) -> Self {
        PartitionScheme { exponents, log_beta: beta.ln(), log_base: base.ln(), budget: 1 << 24 }
    }

    pub fn min_exponent(&self) -> u32 {
        *self.exponents.iter().min().expect("nonempty net")
    }

    /// log r for the cover at level E: r = base·β^{-E}.
    pub fn log_scale(&self, e: u32) -> f64 {
        self.log_base - e as f64 * self.log_beta
    }

    /// Rough word count, used for the budget check.
    fn estimate(&self, e: u32) -> f64 {
        (e as f64 * self.log_beta).exp() * 2.0
    }

    /// Words of the cover at level E (for small E).
    pub fn words(&self, e: u32) -> Result<Vec<Vec<usize>>> {
        self.check(e)?;
        let mut out = Vec::new();
        let mut stack = vec![(Vec::new(), 0u32)];
        while let Some((w, s)) = stack.pop() {
            if s >= e && !w.is_empty() {
                out.push(w);
                continue;
            }
            for (j, &x) in self.exponents.iter().enumerate() {
                let mut c = w.clone();
                c.push(j);
                stack.push((c, s + x));
            }
        }
        out.sort();
        Ok(out)
    }

    fn check(&self, e: u32) -> Result<()> {
        if self.estimate(e) > self.budget as f64 {
            return Err(Error::Budget(format!("cover at level {e} exceeds {} words", self.budget)));
        }
        Ok(())
    }

    /// log η⟦w⟧ over the words of the cover at level E.
    pub fn log_values(&self, measure: &MatrixMeasure<f64>, e: u32) -> Result<Vec<f64>> {
        self.check(e)?;
        if measure.letters() != self.exponents.len() {
            return Err(Error::Dimension("measure and net alphabets differ".into()));
        }
        // shard on prefixes of length ≤ 3 to spread work across threads
        let mut shards = Vec::new();
        let mut done = Vec::new();
        let mut frontier: Vec<(Vec<usize>, u32)> = vec![(Vec::new(), 0)];
        for _ in 0..3 {
            let mut next = Vec::new();
            for (w, s) in frontier {
                for (j, &x) in self.exponents.iter().enumerate() {
                    let mut c = w.clone();
                    c.push(j);
                    if s + x >= e {
                        done.push(c);
                    } else {
                        next.push((c, s + x));
                    }
                }
            }
            frontier = next;
        }
        shards.extend(frontier);
        let mut out: Vec<f64> = done.iter().map(|w| crate::measures::log_value(measure, w)).collect::<Result<_>>()?;
        let rest: Vec<Vec<f64>> = shards
            .par_iter()
            .map(|(w, s)| {
                let mut acc = Vec::new();
                let (row, log) = start(measure, w);
                self.walk(measure, &row, log, *s, e, &mut acc);
                acc
            })
            .collect();
        for r in rest {
            out.extend(r);
        }
        Ok(out)
    }

    fn walk(&self, measure: &MatrixMeasure<f64>, row: &[f64], log: f64, s: u32, e: u32, acc: &mut Vec<f64>) {
        for (j, &x) in self.exponents.iter().enumerate() {
            let next = measure.step_row(row, j);
            let norm: f64 = next.iter().sum();
            if norm <= 0.0 {
                if s + x >= e {
                    acc.push(f64::NEG_INFINITY);
                } else {
                    self.walk(measure, &next, f64::NEG_INFINITY, s + x, e, acc);
                }
                continue;
            }
            let scaled: Vec<f64> = next.iter().map(|v| v / norm).collect();
            let l = log + norm.ln();
            if s + x >= e {
                acc.push(l + measure.row_value(&scaled).ln());
            } else {
                self.walk(measure, &scaled, l, s + x, e, acc);
            }
        }
    }
}

/// Normalized row after a nonempty prefix, with its log scale.
fn start(measure: &MatrixMeasure<f64>, w: &[usize]) -> (Vec<f64>, f64) {
    let mut row = measure.start_row(w[0]);
    let mut log = 0.0;
    for &c in &w[1..] {
        row = measure.step_row(&row, c);
        let s: f64 = row.iter().sum();
        if s > 0.0 {
            row.iter_mut().for_each(|x| *x /= s);
            log += s.ln();
        }
    }
    let s: f64 = row.iter().sum();
    if s > 0.0 {
        row.iter_mut().for_each(|x| *x /= s);
        log += s.ln();
    } else {
        log = f64::NEG_INFINITY;
    }
    (row, log)
}
