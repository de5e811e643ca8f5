//! Direct enclosure of μ(I) from the digit-sum definition X = Σ ω_k β^{-(k+1)}.
//!
//! A prefix of length n pins X to [X_n, X_n + α_μ β^{-n}]. Prefixes whose
//! range lies inside I count toward the lower bound, disjoint ones are dropped,
//! and the rest are refined until N digits; their mass goes to the upper bound
//! only. Comparisons run in floating point with a margin and fall back to exact
//! arithmetic in Q(β) near the endpoints. μ has no atoms, so endpoints of I
//! may be treated as closed or open.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::algebraic::{AlgebraicNumber, NumberField, RationalCombination};
use crate::error::{Error, Result};
use crate::iset::DigitParams;
use crate::transmat::check_probs_f64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureEnclosure {
    pub lo: f64,
    pub hi: f64,
    pub digits_used: usize,
    pub nodes: u64,
}

impl MeasureEnclosure {
    pub fn contains(&self, x: f64, slack: f64) -> bool {
        self.lo - slack <= x && x <= self.hi + slack
    }
}

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    pub digits: usize,
    /// maximum number of visited prefixes
    pub budget: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { digits: 24, budget: 1 << 24 }
    }
}

const MARGIN: f64 = 1e-9;

enum Place {
    Inside,
    Outside,
    Straddle,
}

struct Walk<'a> {
    field: &'a Arc<NumberField>,
    probs: &'a [f64],
    beta: f64,
    alpha_mu: RationalCombination,
    alpha_f: f64,
    a: &'a RationalCombination,
    b: &'a RationalCombination,
    a_f: f64,
    b_f: f64,
    cfg: OracleConfig,
    lo: f64,
    straddle: f64,
    nodes: u64,
}

impl Walk<'_> {
    fn cmp(&self, x: &RationalCombination, xf: f64, y: &RationalCombination, yf: f64) -> Result<Ordering> {
        if xf < yf - MARGIN {
            Ok(Ordering::Less)
        } else if xf > yf + MARGIN {
            Ok(Ordering::Greater)
        } else {
            x.compare(y)
        }
    }

    fn place(&self, num: &AlgebraicNumber, n: usize, x: f64) -> Result<Place> {
        let tail = self.alpha_f * self.beta.powi(-(n as i32));
        let right_f = x + tail;
        let left = RationalCombination::over_beta_pow(num.clone(), n as u32);
        let right = left.add(&self.alpha_mu.shift(n as u32));
        let ge_a = self.cmp(&left, x, self.a, self.a_f)? != Ordering::Less;
        let le_b = self.cmp(&right, right_f, self.b, self.b_f)? != Ordering::Greater;
        if ge_a && le_b {
            return Ok(Place::Inside);
        }
        if self.cmp(&right, right_f, self.a, self.a_f)? != Ordering::Greater
            || self.cmp(&left, x, self.b, self.b_f)? != Ordering::Less
        {
            return Ok(Place::Outside);
        }
        Ok(Place::Straddle)
    }

    fn visit(&mut self, num: AlgebraicNumber, n: usize, x: f64, mass: f64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cfg.budget {
            return Err(Error::Budget(format!("oracle visited more than {} prefixes", self.cfg.budget)));
        }
        match self.place(&num, n, x)? {
            Place::Inside => self.lo += mass,
            Place::Outside => {}
            Place::Straddle if n == self.cfg.digits => self.straddle += mass,
            Place::Straddle => {
                let beta = AlgebraicNumber::beta(self.field);
                let shifted = &num * &beta;
                let scale = self.beta.powi(-(n as i32 + 1));
                for (d, &pd) in self.probs.iter().enumerate() {
                    if pd == 0.0 {
                        continue;
                    }
                    let child = &shifted + &AlgebraicNumber::from_integer(self.field, d as i64);
                    self.visit(child, n + 1, x + d as f64 * scale, mass * pd)?;
                }
            }
        }
        Ok(())
    }
}

/// Enclosure of μ([a, b]) for the (β, d) Bernoulli convolution with the given digit probabilities.
pub fn brute_force_enclosure(
    field: &Arc<NumberField>,
    probs: &[f64],
    a: &RationalCombination,
    b: &RationalCombination,
    cfg: OracleConfig,
) -> Result<MeasureEnclosure> {
    check_probs_f64(probs)?;
    let params = DigitParams::new(field, probs.len() as u32)?;
    let mut w = Walk {
        field,
        probs,
        beta: field.beta_f64(),
        alpha_f: params.alpha_mu.to_f64(),
        alpha_mu: params.alpha_mu,
        a,
        b,
        a_f: a.to_f64(),
        b_f: b.to_f64(),
        cfg,
        lo: 0.0,
        straddle: 0.0,
        nodes: 0,
    };
    w.visit(AlgebraicNumber::zero(field), 0, 0.0, 1.0)?;
    Ok(MeasureEnclosure { lo: w.lo, hi: w.lo + w.straddle, digits_used: cfg.digits, nodes: w.nodes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_support() {
        let f = NumberField::golden();
        let zero = RationalCombination::from_integer(&f, 0);
        let top = RationalCombination::from_element(AlgebraicNumber::beta(&f));
        let e = brute_force_enclosure(&f, &[0.5, 0.5], &zero, &top, OracleConfig { digits: 10, budget: 1000 }).unwrap();
        assert_eq!((e.lo, e.hi), (1.0, 1.0));
    }

    #[test]
    fn last_erdos_interval() {
        let f = NumberField::golden();
        let one = RationalCombination::from_integer(&f, 1);
        let top = RationalCombination::from_element(AlgebraicNumber::beta(&f));
        let e = brute_force_enclosure(&f, &[0.5, 0.5], &one, &top, OracleConfig::default()).unwrap();
        assert!(e.contains(1.0 / 3.0, 1e-12), "{e:?}");
        assert!(e.hi - e.lo < 1e-3);
    }
}
