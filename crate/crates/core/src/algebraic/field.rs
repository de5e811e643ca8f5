use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly;
use crate::error::{Error, Result};

/// Enclosure of the modulus of one Galois conjugate.
#[derive(Clone, Debug)]
pub struct ConjugateModulus {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Clone, Debug)]
pub struct NumberField {
    minpoly: Vec<BigInt>,
    beta_lo: BigRational,
    beta_hi: BigRational,
    conjugates: Vec<ConjugateModulus>,
    pv: bool,
    irreducibility_certified: bool,
    hint: f64,
}

fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

fn initial_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(1u64 << 41))
}

impl NumberField {
    /// Build the field of the unique root β > 1 of `coeffs` (low degree first) closest to `hint`.
    pub fn new(coeffs: Vec<BigInt>, hint: f64) -> Result<Arc<Self>> {
        let coeffs = poly::trim(coeffs);
        if coeffs.len() < 2 || !coeffs.last().unwrap().is_one() {
            return Err(Error::NotMonic);
        }
        let s = poly::degree(&coeffs);
        let certified = s <= 4;
        if certified {
            if let Some(w) = poly::reducibility_witness(&coeffs) {
                return Err(Error::Reducible(w));
            }
        }
        let roots = poly::complex_roots(&coeffs);
        let radii: Vec<f64> = roots.iter().map(|z| poly::inclusion_radius(&coeffs, *z)).collect();
        let pick = roots
            .iter()
            .enumerate()
            .filter(|(k, z)| z.im.abs() <= radii[*k].max(1e-9) && z.re > 1.0)
            .min_by(|a, b| (a.1.re - hint).abs().partial_cmp(&(b.1.re - hint).abs()).unwrap())
            .map(|(k, _)| k)
            .ok_or(Error::NoRootNearHint(hint))?;
        let (lo, hi) = bracket(&coeffs, roots[pick].re).ok_or(Error::NoRootNearHint(hint))?;
        if lo <= BigRational::one() {
            return Err(Error::NoRootNearHint(hint));
        }
        let conjugates: Vec<ConjugateModulus> = roots
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != pick)
            .map(|(k, z)| ConjugateModulus { lo: (z.norm() - radii[k]).max(0.0), hi: z.norm() + radii[k] })
            .collect();
        let pv = conjugates.iter().all(|c| c.hi < 1.0);
        Ok(Arc::new(NumberField {
            minpoly: coeffs,
            beta_lo: lo,
            beta_hi: hi,
            conjugates,
            pv,
            irreducibility_certified: certified,
            hint,
        }))
    }

    /// Parse a descriptor like `x^2-x-1@1.6`.
    pub fn from_descriptor(desc: &str) -> Result<Arc<Self>> {
        let (p, h) =
            desc.split_once('@').ok_or_else(|| Error::Parse(format!("field descriptor '{desc}' lacks '@hint'")))?;
        let hint: f64 = h.trim().parse().map_err(|_| Error::Parse(format!("bad root hint '{h}'")))?;
        Self::new(poly::parse(p)?, hint)
    }

    pub fn golden() -> Arc<Self> {
        Self::multinacci(2)
    }

    /// The PV root of x^m = x^{m-1} + ... + 1.
    pub fn multinacci(m: usize) -> Arc<Self> {
        assert!(m >= 2);
        let mut c = vec![BigInt::from(-1); m];
        c.push(BigInt::one());
        Self::new(c, 2.0 - 0.5f64.powi(m as i32)).expect("multinacci field")
    }

    pub fn integer(b: i64) -> Result<Arc<Self>> {
        Self::new(vec![BigInt::from(-b), BigInt::one()], b as f64)
    }

    pub fn descriptor(&self) -> String {
        format!("{}@{}", poly::format(&self.minpoly, "x"), self.hint)
    }

    pub fn minimal_polynomial(&self) -> &[BigInt] {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        poly::degree(&self.minpoly)
    }

    pub fn beta_enclosure(&self) -> (&BigRational, &BigRational) {
        (&self.beta_lo, &self.beta_hi)
    }

    pub fn beta_f64(&self) -> f64 {
        let mid = (&self.beta_lo + &self.beta_hi) / BigRational::from_integer(2.into());
        mid.to_f64().unwrap()
    }

    pub fn conjugate_moduli(&self) -> &[ConjugateModulus] {
        &self.conjugates
    }

    pub fn is_pv(&self) -> bool {
        self.pv
    }

    pub fn irreducibility_certified(&self) -> bool {
        self.irreducibility_certified
    }

    /// Halve an enclosure of β, keeping the half that holds the root.
    pub(crate) fn bisect(&self, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
        let mid = (lo + hi) / BigRational::from_integer(2.into());
        let fl = poly::eval_rat(&self.minpoly, lo);
        let fm = poly::eval_rat(&self.minpoly, &mid);
        if fm.is_zero() {
            return (mid.clone(), mid);
        }
        if fl.is_zero() {
            return (lo.clone(), lo.clone());
        }
        if fl.is_negative() == fm.is_negative() {
            (mid, hi.clone())
        } else {
            (lo.clone(), mid)
        }
    }

    /// Certified lower bound on |A(β)| for nonzero A with coefficient height ≤ M.
    pub fn garsia_bound(&self, m: u64) -> Result<f64> {
        if !self.pv {
            return Err(Error::NotPv);
        }
        if m == 0 {
            return Err(Error::Digits("height bound must be positive".into()));
        }
        let s = self.degree() as i32;
        let prod: f64 = self.conjugates.iter().map(|c| 1.0 - c.hi).product();
        let b = prod / (m as f64).powi(s - 1);
        // round down past any accumulated float error
        Ok(b * (1.0 - 1e-12))
    }
}

/// Exact isolating interval of width ≤ 2^-41 around a simple root near `x`.
fn bracket(c: &[BigInt], x: f64) -> Option<(BigRational, BigRational)> {
    let dc = poly::derivative(c);
    let mut delta = 1e-10 * x.abs().max(1.0);
    for _ in 0..60 {
        let lo = rat(x - delta);
        let hi = rat(x + delta);
        if lo.is_positive() {
            let fl = poly::eval_rat(c, &lo);
            let fh = poly::eval_rat(c, &hi);
            let (dl, dh) = poly::eval_interval(&dc, &lo, &hi);
            let monotone = dl.is_positive() || dh.is_negative();
            if monotone && (fl.is_zero() || fh.is_zero() || fl.is_negative() != fh.is_negative()) {
                let mut lo = lo;
                let mut hi = hi;
                if fl.is_zero() {
                    return Some((lo.clone(), lo));
                }
                if fh.is_zero() {
                    return Some((hi.clone(), hi));
                }
                let w = initial_width();
                let neg_lo = fl.is_negative();
                while &hi - &lo > w {
                    let mid = (&lo + &hi) / BigRational::from_integer(2.into());
                    let fm = poly::eval_rat(c, &mid);
                    if fm.is_zero() {
                        return Some((mid.clone(), mid));
                    }
                    if fm.is_negative() == neg_lo {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                return Some((lo, hi));
            }
        }
        delta *= 4.0;
        if delta > 0.25 {
            break;
        }
    }
    None
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({}), beta ~ {:.12}", poly::format(&self.minpoly, "x"), self.beta_f64())
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly && self.beta_lo <= other.beta_hi && other.beta_lo <= self.beta_hi
    }
}

pub(crate) fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_field() {
        let f = NumberField::golden();
        assert!((f.beta_f64() - 1.618033988749895).abs() < 1e-12);
        assert!(f.is_pv());
        let c = &f.conjugate_moduli()[0];
        assert!(c.lo <= 0.6180339887498949 && 0.6180339887498949 <= c.hi);
        let (lo, hi) = f.beta_enclosure();
        assert!((hi - lo).to_f64().unwrap() <= 1e-12);
    }

    #[test]
    fn examples_are_pv() {
        let q = NumberField::from_descriptor("x^2-5x-3@5.5").unwrap();
        assert!(q.is_pv());
        assert!(q.beta_f64() > 5.0 && q.beta_f64() < 6.0);
        let c = NumberField::from_descriptor("x^3-3x^2+1@2.8").unwrap();
        assert!(c.is_pv());
        assert!((c.beta_f64() - 2.879385241571817).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        assert_eq!(NumberField::new(vec![BigInt::from(-1), BigInt::from(2)], 1.0).unwrap_err(), Error::NotMonic);
        assert!(matches!(NumberField::from_descriptor("x^2+1@1.5"), Err(Error::NoRootNearHint(_))));
        assert!(matches!(NumberField::from_descriptor("x^2-4@2"), Err(Error::Reducible(_))));
    }

    #[test]
    fn salem_like_is_not_pv() {
        // x^4 - x^3 - x^2 - x + 1 has a conjugate on the unit circle
        let f = NumberField::from_descriptor("x^4-x^3-x^2-x+1@1.7").unwrap();
        assert!(!f.is_pv());
        assert!(f.garsia_bound(4).is_err());
    }

    #[test]
    fn garsia_values() {
        let g = NumberField::golden();
        let b = g.garsia_bound(4).unwrap();
        assert!((b - 0.25 * (1.0 - 0.6180339887498949)).abs() < 1e-9);
        let z = NumberField::integer(3).unwrap();
        assert!((z.garsia_bound(7).unwrap() - 1.0).abs() < 1e-9);
    }
}
