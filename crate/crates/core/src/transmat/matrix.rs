use std::fmt;

use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

/// Numeric type of matrix entries: exact rationals or doubles.
pub trait Scalar: Num + Clone + PartialOrd + fmt::Debug + Send + Sync {
    fn to_f64(&self) -> f64;
    fn from_i64(n: i64) -> Self;
    fn is_exact() -> bool;
}

impl Scalar for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn is_exact() -> bool {
        false
    }
}

impl Scalar for BigRational {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn is_exact() -> bool {
        true
    }
}

pub fn pow<T: Scalar>(x: &T, k: u32) -> T {
    let mut acc = T::one();
    for _ in 0..k {
        acc = acc * x.clone();
    }
    acc
}

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.clone() * s.clone()).collect() }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![T::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                out[j] = out[j].clone() + a.clone() * self.get(i, j).clone();
            }
        }
        out
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(|x| x.to_f64())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|x| *x >= T::zero())
    }

    /// Positions of nonzero entries.
    pub fn pattern(&self) -> Vec<Vec<bool>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| !x.is_zero()).collect()).collect()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a.to_f64() - b.to_f64()).abs()).fold(0.0, f64::max)
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// Kernel vector of a square matrix when the kernel is one-dimensional.
/// Pivots are chosen by largest magnitude; for floats, entries below `tol`
/// relative to the matrix scale count as zero.
pub fn null_vector<T: Scalar>(m: &Matrix<T>, tol: f64) -> Option<Vec<T>> {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let scale = m.data.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max).max(1e-300);
    let small = |x: &T| {
        if T::is_exact() {
            x.is_zero()
        } else {
            x.to_f64().abs() <= tol * scale
        }
    };
    let mut a = m.clone();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let best = (r..n)
            .filter(|&i| !small(a.get(i, c)))
            .max_by(|&i, &j| a.get(i, c).to_f64().abs().partial_cmp(&a.get(j, c).to_f64().abs()).unwrap());
        let Some(p) = best else { continue };
        for j in 0..n {
            let tmp = a.get(r, j).clone();
            a.set(r, j, a.get(p, j).clone());
            a.set(p, j, tmp);
        }
        let piv = a.get(r, c).clone();
        for j in 0..n {
            a.set(r, j, a.get(r, j).clone() / piv.clone());
        }
        for i in 0..n {
            if i != r && !a.get(i, c).is_zero() {
                let f = a.get(i, c).clone();
                for j in 0..n {
                    let v = a.get(i, j).clone() - f.clone() * a.get(r, j).clone();
                    a.set(i, j, v);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == n {
            break;
        }
    }
    if pivot_cols.len() != n - 1 {
        return None;
    }
    let free = (0..n).find(|c| !pivot_cols.contains(c))?;
    let mut v = vec![T::zero(); n];
    v[free] = T::one();
    for (row, &c) in pivot_cols.iter().enumerate() {
        v[c] = T::zero() - a.get(row, free).clone();
    }
    Some(v)
}
