//! Digit-indexed transition matrices built from the I-set automaton.

mod matrix;

pub use matrix::{dot, null_vector, pow, Matrix, Scalar};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::iset::{DigitParams, ISet, RelationEdge};

#[derive(Clone, Debug)]
pub struct MatrixFamily<T> {
    matrices: Vec<Matrix<T>>,
    labels: Vec<String>,
}

impl<T: Scalar> MatrixFamily<T> {
    pub fn new(matrices: Vec<Matrix<T>>, labels: Vec<String>) -> Result<Self> {
        let Some(first) = matrices.first() else {
            return Err(Error::Dimension("empty family".into()));
        };
        let r = first.rows();
        if matrices.iter().any(|m| m.rows() != r || m.cols() != r) {
            return Err(Error::Dimension("family matrices must be square of equal size".into()));
        }
        if labels.len() != matrices.len() {
            return Err(Error::Dimension("one label per matrix".into()));
        }
        Ok(MatrixFamily { matrices, labels })
    }

    pub fn matrices(&self) -> &[Matrix<T>] {
        &self.matrices
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.matrices[0].rows()
    }

    pub fn get(&self, i: usize) -> &Matrix<T> {
        &self.matrices[i]
    }

    pub fn check_word(&self, w: &[usize]) -> Result<()> {
        match w.iter().find(|&&c| c >= self.len()) {
            Some(&letter) => Err(Error::Letter { letter, size: self.len() }),
            None => Ok(()),
        }
    }

    /// M_{w_0} ... M_{w_{n-1}}; identity for the empty word.
    pub fn word_product(&self, w: &[usize]) -> Matrix<T> {
        let mut acc = Matrix::identity(self.dim());
        for &c in w {
            acc = acc.mul(&self.matrices[c]);
        }
        acc
    }

    /// The family {M_{w_j}} of products along the given words.
    pub fn compose(&self, words: &[Vec<usize>], labels: Vec<String>) -> Result<Self> {
        for w in words {
            self.check_word(w)?;
        }
        MatrixFamily::new(words.iter().map(|w| self.word_product(w)).collect(), labels)
    }

    pub fn sum(&self) -> Matrix<T> {
        self.matrices[1..].iter().fold(self.matrices[0].clone(), |acc, m| acc.add(m))
    }
}

/// M_i(h, k) = p_j whenever the edge (h, i, k, j) exists.
pub fn build_matrices<T: Scalar>(
    set: &ISet,
    edges: &[RelationEdge],
    params: &DigitParams,
    probs: &[T],
) -> Result<MatrixFamily<T>> {
    let r = set.len();
    let b = params.b;
    if probs.len() != params.d as usize {
        return Err(Error::Dimension(format!("{} probabilities for d = {}", probs.len(), params.d)));
    }
    let mut mats = vec![Matrix::zeros(r, r); b as usize];
    for e in edges {
        if e.h >= r || e.k >= r || e.i >= b {
            return Err(Error::Dimension(format!("edge {e:?} outside the automaton")));
        }
        mats[e.i as usize].set(e.h, e.k, probs[e.j as usize].clone());
    }
    let labels = (0..b).map(|i| format!("M{i}")).collect();
    MatrixFamily::new(mats, labels)
}

/// Parse probabilities such as "1/6,1/6,1/6,1/6,1/6,1/6" or "0.3,0.7" exactly.
pub fn parse_probs(text: &str) -> Result<Vec<BigRational>> {
    let v: Vec<BigRational> = text.split(',').map(|s| parse_rational(s.trim())).collect::<Result<_>>()?;
    check_probs(&v)?;
    Ok(v)
}

pub fn check_probs(v: &[BigRational]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::Probabilities("empty probability vector".into()));
    }
    if v.iter().any(|x| *x < BigRational::zero()) {
        return Err(Error::Probabilities("negative entry".into()));
    }
    let s: BigRational = v.iter().cloned().sum();
    if !s.is_one() {
        return Err(Error::Probabilities(format!("entries sum to {s}, not 1")));
    }
    Ok(())
}

pub fn check_probs_f64(v: &[f64]) -> Result<()> {
    if v.iter().any(|x| !(*x >= 0.0)) {
        return Err(Error::Probabilities("negative or NaN entry".into()));
    }
    let s: f64 = v.iter().sum();
    if (s - 1.0).abs() > 1e-15 * v.len() as f64 {
        return Err(Error::Probabilities(format!("entries sum to {s}, not 1")));
    }
    Ok(())
}

/// Exact rational from "a/b", "a" or a finite decimal "0.125".
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational number: '{s}'"));
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(BigRational::new(a, b));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if (ip.is_empty() && fp.is_empty()) || !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{ip}{fp}");
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let den = num_traits::pow(BigInt::from(10), fp.len());
    let r = BigRational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Fixed vector of a nonnegative matrix by power iteration, normalized so L·R = 1.
pub fn fixed_vector(sum: &Matrix<f64>, l: &[f64]) -> Result<Vec<f64>> {
    let n = sum.rows();
    let mut v = vec![1.0 / n as f64; n];
    for _ in 0..200_000 {
        let w = sum.mul_vec(&v);
        let s = dot(l, &w);
        if !(s > 0.0) {
            return Err(Error::NoFixedVector("iterate left the cone of L".into()));
        }
        let w: Vec<f64> = w.iter().map(|x| x / s).collect();
        let diff = w.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = w;
        if diff < 1e-14 {
            let mv = sum.mul_vec(&v);
            let res = mv.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            if res > 1e-12 {
                return Err(Error::NoFixedVector(format!("spectral radius is not 1 (residual {res:.3e})")));
            }
            if v.iter().any(|x| *x < -1e-14) {
                return Err(Error::NoFixedVector("negative entries".into()));
            }
            return Ok(v);
        }
    }
    Err(Error::NoFixedVector("power iteration did not converge".into()))
}

/// Exact fixed vector: the one-dimensional kernel of M - I, normalized by L·R = 1.
pub fn fixed_vector_exact<T: Scalar>(sum: &Matrix<T>, l: &[T]) -> Result<Vec<T>> {
    let n = sum.rows();
    let shifted = sum.add(&Matrix::identity(n).scale(&(T::zero() - T::one())));
    let v = null_vector(&shifted, 1e-12)
        .ok_or_else(|| Error::NoFixedVector("kernel of M - I is not one-dimensional".into()))?;
    let s = dot(l, &v);
    if s.is_zero() {
        return Err(Error::NoFixedVector("fixed vector orthogonal to L".into()));
    }
    let v: Vec<T> = v.into_iter().map(|x| x / s.clone()).collect();
    if v.iter().any(|x| x.to_f64() < -1e-14) {
        return Err(Error::NoFixedVector("fixed vector has negative entries".into()));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("0.3").unwrap(), r(3, 10));
        assert_eq!(parse_rational("1/6").unwrap(), r(1, 6));
        assert_eq!(parse_rational("-2").unwrap(), r(-2, 1));
        assert!(parse_rational("a").is_err());
        assert!(parse_probs("0.3,0.6").is_err());
        assert!(parse_probs("1/2,1/2").is_ok());
    }

    #[test]
    fn trivial_fixed_vector() {
        let m = Matrix::from_rows(vec![vec![1.0]]);
        assert_eq!(fixed_vector(&m, &[1.0]).unwrap(), vec![1.0]);
        let e = Matrix::from_rows(vec![vec![r(1, 1)]]);
        assert_eq!(fixed_vector_exact(&e, &[r(1, 1)]).unwrap(), vec![r(1, 1)]);
    }

    #[test]
    fn empty_word_is_identity() {
        let f =
            MatrixFamily::new(vec![Matrix::from_rows(vec![vec![2.0, 1.0], vec![0.0, 1.0]])], vec!["A".into()]).unwrap();
        assert_eq!(f.word_product(&[]), Matrix::identity(2));
    }
}
