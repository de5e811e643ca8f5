use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("polynomial must be monic with integer coefficients and degree >= 1")]
    NotMonic,
    #[error("no real root > 1 near {0}")]
    NoRootNearHint(f64),
    #[error("minimal polynomial is reducible over the rationals ({0})")]
    Reducible(String),
    #[error("field is not PV: a conjugate has modulus >= 1")]
    NotPv,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("sign refinement exceeded {0} bisection steps")]
    PrecisionCap(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid digit parameters: {0}")]
    Digits(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("no nonnegative fixed vector: {0}")]
    NoFixedVector(String),
    #[error("beta-expansion of 1 not finite within {0} digits")]
    NotFiniteType(usize),
    #[error("admissibility failure: {0}")]
    Admissibility(String),
    #[error("partition check failed: {0}")]
    Partition(String),
    #[error("letter {letter} outside alphabet of size {size}")]
    Letter { letter: usize, size: usize },
    #[error("invalid probabilities: {0}")]
    Probabilities(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("zero measure: {0}")]
    ZeroMeasure(String),
    #[error("outside hypothesis: {0}")]
    Hypothesis(String),
    #[error("continued fraction: {0}")]
    ContFrac(String),
    #[error("spectrum: {0}")]
    Spectrum(String),
}

pub type Result<T> = std::result::Result<T, Error>;
