//! Measures on nets given by matrix products, plus a brute-force oracle.

mod erdos;
mod multinacci;
mod oracle;

pub use erdos::{ErdosModel, ERDOS_EXPONENTS};
pub use multinacci::{compare_mu_mustar, Comparison, FullFamily, MultinacciModel};
pub use oracle::{brute_force_enclosure, MeasureEnclosure, OracleConfig};

use crate::error::{Error, Result};
use crate::transmat::{dot, Matrix, MatrixFamily, Scalar};

#[derive(Clone, Debug)]
pub enum Head<T> {
    /// value(w) = L M_w R
    Row(Vec<T>),
    /// value(ηw) = V_η M_w R; the empty word gets Σ_η V_η R
    PerLetter(Vec<Vec<T>>),
}

/// A measure whose basic-interval values are products of nonnegative matrices.
#[derive(Clone, Debug)]
pub struct MatrixMeasure<T> {
    head: Head<T>,
    family: MatrixFamily<T>,
    tail: Vec<T>,
}

impl<T: Scalar> MatrixMeasure<T> {
    pub fn new(head: Head<T>, family: MatrixFamily<T>, tail: Vec<T>) -> Result<Self> {
        let n = family.dim();
        let ok = match &head {
            Head::Row(l) => l.len() == n,
            Head::PerLetter(v) => v.len() == family.len() && v.iter().all(|r| r.len() == n),
        };
        if !ok || tail.len() != n {
            return Err(Error::Dimension("head or tail vector does not match the family".into()));
        }
        Ok(MatrixMeasure { head, family, tail })
    }

    pub fn family(&self) -> &MatrixFamily<T> {
        &self.family
    }

    pub fn head(&self) -> &Head<T> {
        &self.head
    }

    pub fn tail(&self) -> &[T] {
        &self.tail
    }

    /// Size of the net alphabet.
    pub fn letters(&self) -> usize {
        self.family.len()
    }

    pub fn eval(&self, w: &[usize]) -> Result<T> {
        self.family.check_word(w)?;
        Ok(self.eval_unchecked(w))
    }

    pub fn eval_unchecked(&self, w: &[usize]) -> T {
        match &self.head {
            Head::Row(l) => {
                let mut row = l.clone();
                for &c in w {
                    row = self.family.get(c).vec_mul(&row);
                }
                dot(&row, &self.tail)
            }
            Head::PerLetter(v) => match w.split_first() {
                None => v.iter().fold(T::zero(), |acc, r| acc + dot(r, &self.tail)),
                Some((&eta, rest)) => {
                    let mut row = v[eta].clone();
                    for &c in rest {
                        row = self.family.get(c).vec_mul(&row);
                    }
                    dot(&row, &self.tail)
                }
            },
        }
    }

    /// Row vector after reading a nonempty prefix; the walk state of sweeps.
    pub fn start_row(&self, first: usize) -> Vec<T> {
        match &self.head {
            Head::Row(l) => self.family.get(first).vec_mul(l),
            Head::PerLetter(v) => v[first].clone(),
        }
    }

    pub fn step_row(&self, row: &[T], letter: usize) -> Vec<T> {
        self.family.get(letter).vec_mul(row)
    }

    pub fn row_value(&self, row: &[T]) -> T {
        dot(row, &self.tail)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U + Copy) -> MatrixMeasure<U> {
        let head = match &self.head {
            Head::Row(l) => Head::Row(l.iter().map(f).collect()),
            Head::PerLetter(v) => Head::PerLetter(v.iter().map(|r| r.iter().map(f).collect()).collect()),
        };
        let family =
            MatrixFamily::new(self.family.matrices().iter().map(|m| m.map(f)).collect(), self.family.labels().to_vec())
                .expect("same shapes");
        MatrixMeasure { head, family, tail: self.tail.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> MatrixMeasure<f64> {
        self.map(|x| x.to_f64())
    }
}

/// Lebesgue measure on a net with contraction exponents e_j, normalized to mass 1.
pub fn lebesgue(beta: f64, exponents: &[u32]) -> MatrixMeasure<f64> {
    let mats = exponents.iter().map(|&e| Matrix::from_rows(vec![vec![beta.powi(-(e as i32))]])).collect();
    let labels = (0..exponents.len()).map(|j| format!("L{j}")).collect();
    let family = MatrixFamily::new(mats, labels).expect("1x1 family");
    MatrixMeasure { head: Head::Row(vec![1.0]), family, tail: vec![1.0] }
}

/// Calls `f(word, value)` for every word of length exactly n.
pub fn for_each_word<T: Scalar>(measure: &MatrixMeasure<T>, n: usize, f: &mut impl FnMut(&[usize], &T)) {
    if n == 0 {
        f(&[], &measure.eval_unchecked(&[]));
        return;
    }
    let mut word = Vec::with_capacity(n);
    for a in 0..measure.letters() {
        word.push(a);
        let row = measure.start_row(a);
        walk(measure, &row, n, &mut word, f);
        word.pop();
    }
}

fn walk<T: Scalar>(
    measure: &MatrixMeasure<T>,
    row: &[T],
    n: usize,
    word: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize], &T),
) {
    if word.len() == n {
        f(word, &measure.row_value(row));
        return;
    }
    for a in 0..measure.letters() {
        word.push(a);
        let next = measure.step_row(row, a);
        walk(measure, &next, n, word, f);
        word.pop();
    }
}

/// log η⟦w⟧ with the row renormalized at every step, safe for long words.
pub fn log_value(measure: &MatrixMeasure<f64>, w: &[usize]) -> Result<f64> {
    measure.family().check_word(w)?;
    let Some((&first, rest)) = w.split_first() else {
        return Ok(measure.eval_unchecked(&[]).ln());
    };
    let mut row = measure.start_row(first);
    let mut log = 0.0;
    for &c in rest {
        row = measure.step_row(&row, c);
        let s: f64 = row.iter().map(|x| x.abs()).sum();
        if s == 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        row.iter_mut().for_each(|x| *x /= s);
        log += s.ln();
    }
    Ok(log + measure.row_value(&row).ln())
}
