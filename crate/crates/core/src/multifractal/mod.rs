//! L^q spectra from stopping-time covers, Legendre transforms, local
//! dimensions and the domain comparison for the Erdős measure.

mod domain;
mod local;
mod partition;
mod spectrum;

pub use domain::{erdos_domain_check, DomainReport, DomainVerdict};
pub use local::{local_dimension, LocalDimensionEstimate};
pub use partition::PartitionScheme;
pub use spectrum::{
    fmt_g, kink_scan, legendre, spectrum, tau_estimate, Legendre, SpectrumConfig, SpectrumEstimate, TauCurve,
};

use crate::measures::ERDOS_EXPONENTS;

fn golden() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// Covers of [0, β) for the Erdős net.
pub fn erdos_scheme() -> PartitionScheme {
    PartitionScheme::new(ERDOS_EXPONENTS.to_vec(), golden(), golden())
}

/// Covers of [0, 1) for the multinacci net of degree m.
pub fn multinacci_scheme(m: usize) -> crate::Result<PartitionScheme> {
    let model = crate::measures::MultinacciModel::new(m, 0.5)?;
    let beta = crate::algebraic::NumberField::multinacci(m).beta_f64();
    Ok(PartitionScheme::new(model.exponents(), beta, 1.0))
}
