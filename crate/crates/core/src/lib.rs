//! Bernoulli convolutions with Pisot parameters: exact number-field arithmetic,
//! transition-matrix representations of the measures, continued-fraction
//! limit potentials and multifractal estimates.

pub mod acceptance;
pub mod algebraic;
pub mod betanet;
pub mod contfrac;
pub mod error;
pub mod fit;
pub mod gibbs;
pub mod iset;
pub mod measures;
pub mod multifractal;
pub mod transmat;

pub use error::{Error, Result};
