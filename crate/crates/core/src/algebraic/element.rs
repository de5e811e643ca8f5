use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{same_field, NumberField};
use super::poly;
use crate::error::{Error, Result};

/// Hard cap on bisections of the β enclosure during a sign query.
pub const SIGN_BISECTION_CAP: usize = 4096;

/// Element of Z[β] stored as a residue polynomial of degree < s.
#[derive(Clone)]
pub struct AlgebraicNumber {
    field: Arc<NumberField>,
    coeffs: Vec<BigInt>,
}

impl AlgebraicNumber {
    pub fn from_coeffs(field: &Arc<NumberField>, coeffs: Vec<BigInt>) -> Self {
        let coeffs = poly::reduce(&coeffs, field.minimal_polynomial());
        AlgebraicNumber { field: field.clone(), coeffs }
    }

    pub fn from_i64s(field: &Arc<NumberField>, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_integer(field: &Arc<NumberField>, n: impl Into<BigInt>) -> Self {
        Self::from_coeffs(field, vec![n.into()])
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::from_integer(field, 0)
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_integer(field, 1)
    }

    pub fn beta(field: &Arc<NumberField>) -> Self {
        Self::from_coeffs(field, vec![BigInt::zero(), BigInt::one()])
    }

    pub fn beta_pow(field: &Arc<NumberField>, k: u32) -> Self {
        let mut c = vec![BigInt::zero(); k as usize + 1];
        c[k as usize] = BigInt::one();
        Self::from_coeffs(field, c)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(n) when the element is the rational integer n.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            self.coeffs.first()
        } else {
            None
        }
    }

    /// Largest coefficient magnitude.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        AlgebraicNumber { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.field);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Enclosure of the real embedding on the field's stored β enclosure.
    pub fn enclosure(&self) -> (BigRational, BigRational) {
        let (lo, hi) = self.field.beta_enclosure();
        poly::eval_interval(&self.coeffs, lo, hi)
    }

    pub fn to_f64(&self) -> f64 {
        let (a, b) = self.enclosure();
        ((a + b) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }

    /// Exact sign, refining the β enclosure until the value enclosure excludes 0.
    pub fn sign(&self) -> Result<i8> {
        if self.is_zero() {
            return Ok(0);
        }
        let (lo, hi) = self.field.beta_enclosure();
        let (mut lo, mut hi) = (lo.clone(), hi.clone());
        for _ in 0..SIGN_BISECTION_CAP {
            let (a, b) = poly::eval_interval(&self.coeffs, &lo, &hi);
            if a.is_positive() {
                return Ok(1);
            }
            if b.is_negative() {
                return Ok(-1);
            }
            if lo == hi {
                // β is rational, so the polynomial value is exact; zero would mean the
                // residue is a nonzero multiple of an irreducible factor
                return Err(Error::PrecisionCap(0));
            }
            let (l, h) = self.field.bisect(&lo, &hi);
            lo = l;
            hi = h;
        }
        Err(Error::PrecisionCap(SIGN_BISECTION_CAP))
    }

    pub fn signum(&self) -> i8 {
        self.sign().expect("sign refinement for a PV field")
    }

    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        if !same_field(&self.field, &other.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(match (self - other).sign()? {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self * other)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn assert_same(&self, other: &Self) {
        assert!(same_field(&self.field, &other.field), "arithmetic on elements of different fields");
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for AlgebraicNumber {}

impl std::hash::Hash for AlgebraicNumber {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl<'a> Add<&'a AlgebraicNumber> for &'a AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn add(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        self.assert_same(rhs);
        AlgebraicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a AlgebraicNumber> for &'a AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn sub(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        self.assert_same(rhs);
        AlgebraicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a AlgebraicNumber> for &'a AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn mul(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        self.assert_same(rhs);
        let prod = poly::mul(&self.coeffs, &rhs.coeffs);
        AlgebraicNumber::from_coeffs(&self.field, prod)
    }
}

impl Neg for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        AlgebraicNumber { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<AlgebraicNumber> for AlgebraicNumber {
            type Output = AlgebraicNumber;
            fn $m(self, rhs: AlgebraicNumber) -> AlgebraicNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        -&self
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&poly::format(&self.coeffs, "β"))
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_identities() {
        let f = NumberField::golden();
        let b = AlgebraicNumber::beta(&f);
        assert_eq!(&b * &b, AlgebraicNumber::from_i64s(&f, &[1, 1]));
        let x = AlgebraicNumber::from_i64s(&f, &[-1, 1]);
        assert_eq!(x.sign().unwrap(), 1);
        assert_eq!(&x + &(-&x), AlgebraicNumber::zero(&f));
        let y = AlgebraicNumber::from_coeffs(&f, vec![(-1).into(), (-1).into(), 1.into()]);
        assert!(y.is_zero());
        assert_eq!(y.sign().unwrap(), 0);
    }

    #[test]
    fn compare_in_quadratic_example() {
        let f = NumberField::from_descriptor("x^2-5x-3@5.5").unwrap();
        let x = AlgebraicNumber::from_i64s(&f, &[-5, 1]);
        let one = AlgebraicNumber::one(&f);
        assert_eq!(x.compare(&one).unwrap(), Ordering::Less);
        assert_eq!(x.sign().unwrap(), 1);
    }

    #[test]
    fn tiny_values_need_refinement() {
        // F_n β - F_{n+1} is about ±β^{-n}, far below the initial enclosure width
        let f = NumberField::golden();
        let (mut a, mut b) = (BigInt::from(1), BigInt::from(1));
        for _ in 0..80 {
            let c = &a + &b;
            a = b;
            b = c;
        }
        let x = AlgebraicNumber::from_coeffs(&f, vec![-b.clone(), a.clone()]);
        // a/b are consecutive Fibonacci numbers: F_81 β - F_82 = -(−1/β)^81 > 0
        assert_eq!(x.sign().unwrap(), 1);
    }

    #[test]
    fn mismatch() {
        let f = NumberField::golden();
        let g = NumberField::multinacci(3);
        let x = AlgebraicNumber::beta(&f);
        let y = AlgebraicNumber::beta(&g);
        assert_eq!(x.checked_add(&y).unwrap_err(), Error::FieldMismatch);
    }
}
