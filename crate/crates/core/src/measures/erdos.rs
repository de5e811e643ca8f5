//! The Erdős measure (golden β, two digits) on the scaled net of [0, β).

use super::{Head, MatrixMeasure};
use crate::betanet::{scaled_erdos_net, AdaptedSystem};
use crate::error::{Error, Result};
use crate::transmat::{Matrix, MatrixFamily, Scalar};

/// Letter w ↦ e with |S_w[0, β)| = β^{1-e}.
pub const ERDOS_EXPONENTS: [u32; 3] = [2, 3, 2];

#[derive(Clone, Debug)]
pub struct ErdosModel<T> {
    p: T,
    q: T,
    family: MatrixFamily<T>,
}

impl<T: Scalar> ErdosModel<T> {
    pub fn new(p: T) -> Result<Self> {
        let q = T::one() - p.clone();
        if !(p > T::zero() && q > T::zero()) {
            return Err(Error::Probabilities("need 0 < p < 1".into()));
        }
        let (z, o) = (T::zero(), T::one());
        let qp = q.clone() / p.clone();
        let pq_ = p.clone() / q.clone();
        let p2 = p.clone() * p.clone();
        let q2 = q.clone() * q.clone();
        let mats = vec![
            Matrix::from_rows(vec![vec![o.clone(), z.clone()], vec![qp.clone(), qp.clone()]]).scale(&p2),
            Matrix::from_rows(vec![vec![o.clone(), o.clone()], vec![qp.clone(), qp]]).scale(&(p2 * q.clone())),
            Matrix::from_rows(vec![vec![pq_.clone(), pq_], vec![z, o]]).scale(&q2),
        ];
        let family = MatrixFamily::new(mats, vec!["P0".into(), "P1".into(), "P2".into()])?;
        Ok(ErdosModel { p, q, family })
    }

    pub fn p(&self) -> &T {
        &self.p
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    pub fn family(&self) -> &MatrixFamily<T> {
        &self.family
    }

    pub fn net(&self) -> AdaptedSystem {
        scaled_erdos_net()
    }

    /// V_0 = (p, 0), V_1 = (pq, pq), V_2 = (0, q).
    pub fn heads(&self) -> Vec<Vec<T>> {
        let pq = self.p.clone() * self.q.clone();
        vec![vec![self.p.clone(), T::zero()], vec![pq.clone(), pq], vec![T::zero(), self.q.clone()]]
    }

    /// (p, q)/(1 - pq)
    pub fn terminal(&self) -> Vec<T> {
        let s = T::one() - self.p.clone() * self.q.clone();
        vec![self.p.clone() / s.clone(), self.q.clone() / s]
    }

    pub fn mu(&self) -> MatrixMeasure<T> {
        MatrixMeasure::new(Head::PerLetter(self.heads()), self.family.clone(), self.terminal()).expect("2x2 shapes")
    }

    /// μ̃*⟦⟦w⟧⟧ = (1 1) P_w (p, q)ᵀ
    pub fn mu_tilde_star(&self) -> MatrixMeasure<T> {
        MatrixMeasure::new(
            Head::Row(vec![T::one(), T::one()]),
            self.family.clone(),
            vec![self.p.clone(), self.q.clone()],
        )
        .expect("2x2 shapes")
    }

    /// (p² + p²q + q² + pq²)/(1 - pq)
    pub fn total_mass(&self) -> T {
        let (p, q) = (self.p.clone(), self.q.clone());
        let num = p.clone() * p.clone()
            + p.clone() * p.clone() * q.clone()
            + q.clone() * q.clone()
            + p.clone() * q.clone() * q.clone();
        num / (T::one() - p * q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    #[test]
    fn uniform_heads() {
        let m = ErdosModel::new(half()).unwrap();
        let t = m.terminal();
        let third = BigRational::new(1.into(), 3.into());
        let v0: Vec<BigRational> = m.heads()[0].iter().map(|x| x * &t[0]).collect();
        assert_eq!(v0[0], third);
        assert_eq!(m.mu().eval(&[2]).unwrap(), third);
    }

    #[test]
    fn mass_one() {
        let m = ErdosModel::new(BigRational::new(3.into(), 10.into())).unwrap();
        assert_eq!(m.total_mass(), BigRational::from_integer(1.into()));
        assert_eq!(m.mu().eval(&[]).unwrap(), BigRational::from_integer(1.into()));
        assert_eq!(m.mu_tilde_star().eval(&[]).unwrap(), BigRational::from_integer(1.into()));
    }
}
