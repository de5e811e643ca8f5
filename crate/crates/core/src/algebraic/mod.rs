//! Exact arithmetic in Z[β] for a real algebraic integer β > 1.
//!
//! Elements are residue polynomials with big-integer coefficients. Signs are
//! decided by interval evaluation on an isolating interval of β, refined by
//! bisection on the minimal polynomial when needed.

mod element;
mod field;
pub mod poly;
mod qbeta;

pub use element::{AlgebraicNumber, SIGN_BISECTION_CAP};
pub use field::{ConjugateModulus, NumberField};
pub use qbeta::{parse_expr, Den, RationalCombination};
