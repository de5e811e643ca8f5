use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::erdos_scheme;
use super::spectrum::{spectrum, SpectrumConfig};
use crate::error::{Error, Result};
use crate::measures::ErdosModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainVerdict {
    Connected,
    Disconnected,
    /// a strict gap exists in closed form but the numerical margin is too thin
    Inconclusive,
}

impl DomainVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            DomainVerdict::Connected => "connected",
            DomainVerdict::Disconnected => "disconnected",
            DomainVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct DomainReport {
    pub p: BigRational,
    pub q: BigRational,
    /// local dimension of μ along the stream of the less likely digit
    pub alpha_star: f64,
    /// log(pq)/(2 log(1/β)), an upper bound for ᾱ of μ̃*
    pub bound: f64,
    /// min(p,q)² < pq, decided exactly
    pub strict_gap: bool,
    pub alpha_bar: Option<(f64, f64)>,
    pub verdict: DomainVerdict,
}

/// Compares the endpoint α* of Dom(μ) with the bound on ᾱ of μ̃*.
/// `depth = None` skips the numerical spectrum.
pub fn erdos_domain_check(p: &BigRational, depth: Option<u32>) -> Result<DomainReport> {
    let q = BigRational::one() - p;
    if !(*p > BigRational::zero() && q > BigRational::zero()) {
        return Err(Error::Probabilities("need 0 < p < 1".into()));
    }
    let (pf, qf) = (p.to_f64().unwrap_or(f64::NAN), q.to_f64().unwrap_or(f64::NAN));
    let log_inv_beta = -((1.0 + 5f64.sqrt()) / 2.0).ln();
    let alpha_star = pf.min(qf).ln() / log_inv_beta;
    let bound = (pf * qf).ln() / (2.0 * log_inv_beta);
    let small = if p < &q { p.clone() } else { q.clone() };
    let strict_gap = &small * &small < p * &q;
    let alpha_bar = match depth {
        None => None,
        Some(d) => {
            let model = ErdosModel::new(pf)?;
            let cfg = SpectrumConfig { depth: d, ..SpectrumConfig::default() };
            let est = spectrum(&model.mu_tilde_star(), &erdos_scheme(), &cfg)?;
            Some((est.legendre.alpha_max, est.alpha_max_err))
        }
    };
    let verdict = if !strict_gap {
        DomainVerdict::Connected
    } else {
        match alpha_bar {
            Some((a, err)) if alpha_star - a >= 10.0 * err && alpha_star > a => DomainVerdict::Disconnected,
            None => DomainVerdict::Disconnected,
            _ => DomainVerdict::Inconclusive,
        }
    };
    Ok(DomainReport { p: p.clone(), q, alpha_star, bound, strict_gap, alpha_bar, verdict })
}
