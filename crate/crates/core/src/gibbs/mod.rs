//! n-step potentials, the limit potential of μ*, and finite-n footprints of
//! the Gibbs, weak Gibbs and quasi-Bernoulli properties.

mod convergence;
mod potential;
mod probes;

pub use convergence::{classify, sample_tails, ConvergenceReport, DecayClass, GapConfig, GapStudy, SandwichCheck};
pub use potential::{erdos_f, erdos_uniform_phi, LimitPotential, Parsed, Transfer};
pub use probes::{
    counterexample_probe, quasi_bernoulli, witness_ratios, ProbeReport, ProbeVerdict, QuasiBernoulliReport,
};

use crate::error::{Error, Result};
use crate::measures::MatrixMeasure;
use crate::transmat::Scalar;

/// η⟦ξ₀…ξ_{n-1}⟧/η⟦ξ₁…ξ_{n-1}⟧, and η⟦ξ₀⟧ for n = 1.
pub fn n_step_ratio<T: Scalar>(measure: &MatrixMeasure<T>, w: &[usize]) -> Result<T> {
    if w.is_empty() {
        return Err(Error::Hypothesis("n-step potential needs n ≥ 1".into()));
    }
    let top = measure.eval(w)?;
    if w.len() == 1 {
        return Ok(top);
    }
    let bottom = measure.eval(&w[1..])?;
    if bottom.is_zero() {
        return Err(Error::ZeroMeasure(format!("suffix {:?} has zero mass", &w[1..])));
    }
    Ok(top / bottom)
}

/// φ_n(ξ) = log(η⟦ξ₀…ξ_{n-1}⟧/η⟦ξ₁…ξ_{n-1}⟧)
pub fn n_step<T: Scalar>(measure: &MatrixMeasure<T>, w: &[usize]) -> Result<f64> {
    Ok(n_step_ratio(measure, w)?.to_f64().ln())
}

/// Π_{k<n} exp φ_{n-k}(σ^k ξ), which telescopes to η⟦ξ₀…ξ_{n-1}⟧.
pub fn telescoping_product<T: Scalar>(measure: &MatrixMeasure<T>, w: &[usize]) -> Result<T> {
    let mut acc = T::one();
    for k in 0..w.len() {
        acc = acc * n_step_ratio(measure, &w[k..])?;
    }
    Ok(acc)
}
