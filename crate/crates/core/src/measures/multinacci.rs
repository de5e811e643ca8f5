//! Bernoulli convolution in multinacci base: the 2×2 family P_j behind μ*,
//! and the full (m+1)-dimensional family behind μ itself.

use super::{Head, MatrixMeasure};
use crate::algebraic::{AlgebraicNumber, NumberField};
use crate::betanet::{multinacci_adapted_system, multinacci_words, multinacci_xy, AdaptedSystem};
use crate::error::{Error, Result};
use crate::iset::{build_iset, Caps, DigitParams, ISet};
use crate::transmat::{build_matrices, null_vector, pow, Matrix, MatrixFamily, Scalar};

#[derive(Clone, Debug)]
pub struct FullFamily<T> {
    pub iset: ISet,
    /// M_0, M_1 over the I-set states
    pub digits: MatrixFamily<T>,
    /// M̂_j = M_{w_j}
    pub family: MatrixFamily<T>,
    /// (μ([0,1) + i_k))_k
    pub masses: Vec<T>,
    pub idx0: usize,
    pub idx2: usize,
}

#[derive(Clone, Debug)]
pub struct MultinacciModel<T> {
    m: usize,
    p: T,
    q: T,
    alpha: T,
    family: MatrixFamily<T>,
    full: FullFamily<T>,
}

impl<T: Scalar> MultinacciModel<T> {
    pub fn new(m: usize, p: T) -> Result<Self> {
        if m < 2 {
            return Err(Error::Digits("multinacci degree must be at least 2".into()));
        }
        let q = T::one() - p.clone();
        if !(p > T::zero() && q > T::zero()) {
            return Err(Error::Probabilities("need 0 < p < 1".into()));
        }
        let alpha = pow(&(q.clone() / p.clone()), m as u32 - 1);
        let family = p_family(m, &p, &q, &alpha)?;
        let full = full_family(m, &p, &q)?;
        Ok(MultinacciModel { m, p, q, alpha, family, full })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> &T {
        &self.p
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    /// (q/p)^{m-1}
    pub fn alpha(&self) -> &T {
        &self.alpha
    }

    /// |J| = m(m-1) + 1
    pub fn letters(&self) -> usize {
        self.m * (self.m - 1) + 1
    }

    pub fn p_family(&self) -> &MatrixFamily<T> {
        &self.family
    }

    pub fn full(&self) -> &FullFamily<T> {
        &self.full
    }

    pub fn net(&self) -> Result<AdaptedSystem> {
        multinacci_adapted_system(self.m)
    }

    /// Word lengths |w_j|, so |⟦j⟧| = β^{-|w_j|}.
    pub fn exponents(&self) -> Vec<u32> {
        multinacci_words(self.m).iter().map(|w| w.len() as u32).collect()
    }

    /// (1 - q^{m-1}, q^{m-1})
    pub fn r_vector(&self) -> Vec<T> {
        let t = pow(&self.q, self.m as u32 - 1);
        vec![T::one() - t.clone(), t]
    }

    pub fn mu_star(&self) -> MatrixMeasure<T> {
        MatrixMeasure::new(Head::Row(vec![T::one(), T::one()]), self.family.clone(), self.r_vector())
            .expect("2x2 shapes")
    }

    /// μ restricted to [0, 1) on the same net.
    pub fn mu(&self) -> MatrixMeasure<T> {
        let n = self.full.iset.len();
        let mut e = vec![T::zero(); n];
        e[self.full.idx0] = T::one();
        MatrixMeasure::new(Head::Row(e), self.full.family.clone(), self.full.masses.clone())
            .expect("full family shapes")
    }

    /// X: rows pick the states 0 and β - 1.
    pub fn projector(&self) -> Matrix<T> {
        let mut x = Matrix::zeros(2, self.full.iset.len());
        x.set(0, self.full.idx0, T::one());
        x.set(1, self.full.idx2, T::one());
        x
    }

    /// Largest entry of |X M̂_j - P_j X| over j; zero in exact mode.
    pub fn projector_defect(&self) -> f64 {
        let x = self.projector();
        (0..self.letters())
            .map(|j| x.mul(self.full.family.get(j)).max_abs_diff(&self.family.get(j).mul(&x)))
            .fold(0.0, f64::max)
    }
}

fn p_family<T: Scalar>(m: usize, p: &T, q: &T, alpha: &T) -> Result<MatrixFamily<T>> {
    let (z, o) = (T::zero(), T::one());
    let pm = pow(p, m as u32);
    let mut mats = Vec::new();
    for j in 0..=m * (m - 1) {
        let mat = if j == 0 {
            Matrix::from_rows(vec![vec![o.clone(), z.clone()], vec![alpha.clone(), alpha.clone()]]).scale(&pm)
        } else if j < m {
            Matrix::from_rows(vec![vec![o.clone(), o.clone()], vec![alpha.clone(), alpha.clone()]])
                .scale(&(pm.clone() * pow(q, j as u32)))
        } else if j == m {
            let ia = o.clone() / alpha.clone();
            Matrix::from_rows(vec![vec![ia.clone(), ia], vec![z.clone(), o.clone()]]).scale(&pow(q, m as u32))
        } else {
            let (x, y) = multinacci_xy(m, j);
            Matrix::from_rows(vec![vec![o.clone(), o.clone()], vec![z.clone(), z.clone()]])
                .scale(&(pow(p, x as u32 + 1) * pow(q, y as u32 + 1)))
        };
        mats.push(mat);
    }
    let labels = (0..mats.len()).map(|j| format!("P{j}")).collect();
    MatrixFamily::new(mats, labels)
}

fn full_family<T: Scalar>(m: usize, p: &T, q: &T) -> Result<FullFamily<T>> {
    let field = NumberField::multinacci(m);
    let params = DigitParams::new(&field, 2)?;
    let (iset, edges) = build_iset(&field, &params, Caps::default())?;
    let digits = build_matrices(&iset, &edges, &params, &[p.clone(), q.clone()])?;
    let words: Vec<Vec<usize>> =
        multinacci_words(m).into_iter().map(|w| w.into_iter().map(|d| d as usize).collect()).collect();
    let labels = (0..words.len()).map(|j| format!("M^{j}")).collect();
    let family = digits.compose(&words, labels)?;
    let lookup = |x: AlgebraicNumber| {
        iset.index_of(&x).ok_or_else(|| Error::Hypothesis("multinacci I-set lacks an expected state".into()))
    };
    let idx0 = lookup(AlgebraicNumber::zero(&field))?;
    let idx1 = lookup(AlgebraicNumber::one(&field))?;
    let idx2 = lookup(&AlgebraicNumber::beta(&field) - &AlgebraicNumber::one(&field))?;
    let n = iset.len();
    let shifted = family.sum().add(&Matrix::identity(n).scale(&(T::zero() - T::one())));
    let v = null_vector(&shifted, 1e-12)
        .ok_or_else(|| Error::NoFixedVector("kernel of M̂_* - I is not one-dimensional".into()))?;
    // [0,1) and [1,2) cover the support [0, 1/(β-1)]
    let s = v[idx0].clone() + v[idx1].clone();
    if s.is_zero() {
        return Err(Error::NoFixedVector("zero mass on [0, 2)".into()));
    }
    let masses: Vec<T> = v.into_iter().map(|x| x / s.clone()).collect();
    if masses.iter().any(|x| x.to_f64() < -1e-14) {
        return Err(Error::NoFixedVector("negative mass".into()));
    }
    Ok(FullFamily { iset, digits, family, masses, idx0, idx2 })
}

#[derive(Clone, Debug)]
pub struct Comparison {
    pub k: usize,
    pub ratio: f64,
    /// C^{k+1}, C = (pq)^m
    pub lower: f64,
    pub upper: f64,
    pub holds: bool,
}

/// μ⟦w⟧/μ*⟦w⟧ for w = 0^k η w′ with η ≠ 0, checked against [C^{k+1}, 2].
pub fn compare_mu_mustar<T: Scalar>(model: &MultinacciModel<T>, w: &[usize]) -> Result<Comparison> {
    let k =
        w.iter().position(|&c| c != 0).ok_or_else(|| Error::Hypothesis("word has no letter other than 0".into()))?;
    let mu = model.mu().eval(w)?.to_f64();
    let star = model.mu_star().eval(w)?.to_f64();
    if star <= 0.0 {
        return Err(Error::ZeroMeasure("μ* vanishes on the word".into()));
    }
    let c = (model.p().to_f64() * model.q().to_f64()).powi(model.m() as i32);
    let ratio = mu / star;
    let lower = c.powi(k as i32 + 1);
    let upper = 2.0;
    let slack = 1e-12;
    Ok(Comparison { k, ratio, lower, upper, holds: ratio >= lower * (1.0 - slack) && ratio <= upper + slack })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn projector_identity_exact() {
        for m in 2..=4 {
            let model = MultinacciModel::new(m, r(2, 5)).unwrap();
            assert_eq!(model.projector_defect(), 0.0, "m = {m}");
        }
    }

    #[test]
    fn mu_star_uniform_letter() {
        let model = MultinacciModel::new(2, r(1, 2)).unwrap();
        assert_eq!(model.mu_star().eval(&[1]).unwrap(), r(1, 4));
        assert_eq!(model.mu_star().eval(&[]).unwrap(), r(1, 1));
    }

    #[test]
    fn r_matches_masses() {
        let model = MultinacciModel::new(3, r(3, 10)).unwrap();
        let f = model.full();
        let (a, b) = (f.masses[f.idx0].clone(), f.masses[f.idx2].clone());
        let s = &a + &b;
        assert_eq!(vec![a / &s, b / &s], model.r_vector());
    }
}
