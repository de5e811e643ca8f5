//! Adapted systems of affine contractions and their symbolic nets.
//!
//! A system is a list of maps x ↦ β^{-e_j} x + c_j whose images of the base
//! interval [0, L) tile it. Basic intervals are images of [0, L) under
//! compositions, with exact endpoints in Q(β).

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::algebraic::{AlgebraicNumber, NumberField, RationalCombination};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct BetaExpansionOfOne {
    pub digits: Vec<u32>,
    pub finite_type: bool,
}

/// Greedy expansion 1 = Σ ε_i β^{-i}; the remainders β^t(1 - Σ_{i≤t} ε_i β^{-i}) stay in Z[β].
pub fn beta_expansion_of_one(field: &Arc<NumberField>, cap: usize) -> Result<BetaExpansionOfOne> {
    let beta = AlgebraicNumber::beta(field);
    let mut r = AlgebraicNumber::one(field);
    let mut digits = Vec::new();
    for _ in 0..cap {
        let x = &beta * &r;
        let eps = floor(&x)?;
        digits.push(u32::try_from(eps.clone()).map_err(|_| Error::Digits("digit out of range".into()))?);
        r = &x - &AlgebraicNumber::from_integer(field, eps);
        if r.is_zero() {
            let exp = BetaExpansionOfOne { digits, finite_type: true };
            if exp.digits.len() >= 2 {
                check_admissible(&exp.digits)?;
            }
            return Ok(exp);
        }
    }
    Err(Error::NotFiniteType(cap))
}

fn floor(x: &AlgebraicNumber) -> Result<BigInt> {
    let f = x.field();
    let mut n = BigInt::from(x.to_f64().floor() as i64);
    while (x - &AlgebraicNumber::from_integer(f, n.clone())).sign()? < 0 {
        n -= 1;
    }
    while (x - &AlgebraicNumber::from_integer(f, n.clone() + 1)).sign()? >= 0 {
        n += 1;
    }
    Ok(n)
}

/// ε_i…ε_{T-1}(ε_T - 1)ε_1…ε_{i-1} ≺ ε_1…ε_T for 2 ≤ i ≤ T.
pub fn check_admissible(eps: &[u32]) -> Result<()> {
    let t = eps.len();
    if t < 2 || eps[t - 1] == 0 {
        return Err(Error::Admissibility("need T ≥ 2 and ε_T > 0".into()));
    }
    let reference: Vec<i64> = eps.iter().map(|&e| e as i64).collect();
    for i in 2..=t {
        let mut rot: Vec<i64> = eps[i - 1..].iter().map(|&e| e as i64).collect();
        *rot.last_mut().unwrap() -= 1;
        rot.extend(eps[..i - 1].iter().map(|&e| e as i64));
        if rot.cmp(&reference) != Ordering::Less {
            return Err(Error::Admissibility(format!("condition fails at i = {i}")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct AffineMap {
    /// contraction ratio β^{-exp}
    pub exp: u32,
    pub offset: RationalCombination,
}

#[derive(Clone, Debug)]
pub struct AdaptedSystem {
    field: Arc<NumberField>,
    /// length of the base interval [0, L)
    base: RationalCombination,
    /// generating words over the β-digit alphabet
    words: Vec<Vec<u32>>,
    maps: Vec<AffineMap>,
}

#[derive(Clone, Debug)]
pub struct BasicInterval {
    pub word: Vec<usize>,
    pub left: RationalCombination,
    /// the length is base · β^{-len_exp}
    pub len_exp: u32,
    pub length: RationalCombination,
}

impl BasicInterval {
    pub fn right(&self) -> RationalCombination {
        self.left.add(&self.length)
    }
}

/// Σ w_k β^{-(k+1)}.
pub fn word_offset(field: &Arc<NumberField>, w: &[u32]) -> RationalCombination {
    let n = w.len() as u32;
    // Σ w_k β^{n-1-k} over β^n
    let mut num = AlgebraicNumber::zero(field);
    let beta = AlgebraicNumber::beta(field);
    for &d in w {
        num = &(&num * &beta) + &AlgebraicNumber::from_integer(field, d as i64);
    }
    RationalCombination::over_beta_pow(num, n)
}

impl AdaptedSystem {
    /// System from digit words on [0, L): S_j(x) = L·R_{w_j}(x / L).
    pub fn from_words(field: &Arc<NumberField>, words: Vec<Vec<u32>>, base: RationalCombination) -> Result<Self> {
        let maps =
            words.iter().map(|w| AffineMap { exp: w.len() as u32, offset: base.mul(&word_offset(field, w)) }).collect();
        let sys = AdaptedSystem { field: field.clone(), base, words, maps };
        sys.verify_partition()?;
        Ok(sys)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn base(&self) -> &RationalCombination {
        &self.base
    }

    pub fn words(&self) -> &[Vec<u32>] {
        &self.words
    }

    pub fn maps(&self) -> &[AffineMap] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Contraction exponents e_j, so |S_j[0, L)| = L β^{-e_j}.
    pub fn exponents(&self) -> Vec<u32> {
        self.maps.iter().map(|m| m.exp).collect()
    }

    pub fn words_as_strings(&self) -> Vec<String> {
        self.words.iter().map(|w| w.iter().map(|d| char::from_digit(*d, 36).unwrap()).collect()).collect()
    }

    /// Sorted images tile [0, L) with exact endpoint matches.
    pub fn verify_partition(&self) -> Result<()> {
        let mut imgs: Vec<BasicInterval> = (0..self.len()).map(|j| self.interval_of_word(&[j])).collect();
        let mut err = None;
        imgs.sort_by(|a, b| {
            a.left.compare(&b.left).unwrap_or_else(|e| {
                err = Some(e);
                Ordering::Equal
            })
        });
        if let Some(e) = err {
            return Err(e);
        }
        let zero = RationalCombination::from_integer(&self.field, 0);
        let mut cursor = zero;
        for im in &imgs {
            if !im.left.equals(&cursor) {
                return Err(Error::Partition(format!("gap or overlap at word {:?}", im.word)));
            }
            cursor = im.right();
        }
        if !cursor.equals(&self.base) {
            return Err(Error::Partition("images do not reach the right end".into()));
        }
        Ok(())
    }

    /// For every suffix w of every generating word, R_w[0,1] ⊆ [0,1].
    pub fn verify_suffixes(&self) -> Result<()> {
        let one = RationalCombination::from_integer(&self.field, 1);
        for w in &self.words {
            for s in 0..w.len() {
                let suf = &w[s..];
                let off = word_offset(&self.field, suf);
                let right =
                    off.add(&RationalCombination::over_beta_pow(AlgebraicNumber::one(&self.field), suf.len() as u32));
                if off.sign()? < 0 || right.compare(&one)? == Ordering::Greater {
                    return Err(Error::Partition(format!("suffix {suf:?} leaves [0,1]")));
                }
            }
        }
        Ok(())
    }

    pub fn interval_of_word(&self, word: &[usize]) -> BasicInterval {
        let mut left = RationalCombination::from_integer(&self.field, 0);
        let mut e = 0;
        for &c in word.iter().rev() {
            let m = &self.maps[c];
            left = m.offset.add(&left.shift(m.exp));
            e += m.exp;
        }
        let length = self.base.shift(e);
        BasicInterval { word: word.to_vec(), left, len_exp: e, length }
    }

    pub fn check_word(&self, w: &[usize]) -> Result<()> {
        match w.iter().find(|&&c| c >= self.len()) {
            Some(&letter) => Err(Error::Letter { letter, size: self.len() }),
            None => Ok(()),
        }
    }

    /// Two maps are equal as affine maps.
    pub fn same_map(a: &AffineMap, b: &AffineMap) -> bool {
        a.exp == b.exp && a.offset.equals(&b.offset)
    }
}

/// Words ε_1…ε_{k-1}ε for 1 ≤ k ≤ T and 0 ≤ ε < ε_k, in the order of j.
pub fn finite_type_adapted_system(field: &Arc<NumberField>, exp: &BetaExpansionOfOne) -> Result<AdaptedSystem> {
    if !exp.finite_type {
        return Err(Error::NotFiniteType(exp.digits.len()));
    }
    check_admissible(&exp.digits)?;
    let mut words = Vec::new();
    for k in 0..exp.digits.len() {
        for eps in 0..exp.digits[k] {
            let mut w = exp.digits[..k].to_vec();
            w.push(eps);
            words.push(w);
        }
    }
    AdaptedSystem::from_words(field, words, RationalCombination::from_integer(field, 1))
}

/// j ↦ (x(j), y(j)) for 1 ≤ j ≤ m(m-1).
pub fn multinacci_xy(m: usize, j: usize) -> (usize, usize) {
    assert!(j >= 1 && j <= m * (m - 1));
    ((m - 1) - (j - 1) / (m - 1), (j - 1) % (m - 1))
}

/// w_0 = 0^m and w_j = 0^{x(j)} 1^{y(j)} 1 0.
pub fn multinacci_words(m: usize) -> Vec<Vec<u32>> {
    let mut words = vec![vec![0u32; m]];
    for j in 1..=m * (m - 1) {
        let (x, y) = multinacci_xy(m, j);
        let mut w = vec![0u32; x];
        w.extend(std::iter::repeat(1).take(y));
        w.extend([1, 0]);
        words.push(w);
    }
    words
}

pub fn multinacci_adapted_system(m: usize) -> Result<AdaptedSystem> {
    if m < 2 {
        return Err(Error::Digits("multinacci degree must be at least 2".into()));
    }
    let field = NumberField::multinacci(m);
    AdaptedSystem::from_words(&field, multinacci_words(m), RationalCombination::from_integer(&field, 1))
}

/// Base-β digit net for integer β.
pub fn integer_adapted_system(field: &Arc<NumberField>) -> Result<AdaptedSystem> {
    if field.degree() != 1 {
        return Err(Error::Digits("integer net needs a degree-1 field".into()));
    }
    let b = -field.minimal_polynomial()[0].clone();
    let b = b.to_u32().ok_or_else(|| Error::Digits("base too large".into()))?;
    let words = (0..b).map(|i| vec![i]).collect();
    AdaptedSystem::from_words(field, words, RationalCombination::from_integer(field, 1))
}

/// S_0 = x/β², S_1 = x/β³ + 1/β, S_2 = x/β² + 1 on [0, β), golden β.
pub fn scaled_erdos_net() -> AdaptedSystem {
    let field = NumberField::golden();
    let base = RationalCombination::from_element(AlgebraicNumber::beta(&field));
    AdaptedSystem::from_words(&field, multinacci_words(2), base).expect("Erdős net tiles [0, β)")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_expansion() {
        let f = NumberField::golden();
        let e = beta_expansion_of_one(&f, 16).unwrap();
        assert_eq!(e.digits, vec![1, 1]);
        let s = finite_type_adapted_system(&f, &e).unwrap();
        assert_eq!(s.words(), &[vec![0], vec![1, 0]]);
    }

    #[test]
    fn integer_expansion_is_single_digit() {
        let f = NumberField::integer(3).unwrap();
        let e = beta_expansion_of_one(&f, 8).unwrap();
        assert_eq!(e.digits, vec![3]);
        assert!(finite_type_adapted_system(&f, &e).is_err());
        assert_eq!(integer_adapted_system(&f).unwrap().len(), 3);
    }

    #[test]
    fn multinacci_word_lists() {
        assert_eq!(multinacci_words(2), vec![vec![0, 0], vec![0, 1, 0], vec![1, 0]]);
        assert_eq!(multinacci_words(3).len(), 7);
    }

    #[test]
    fn admissibility() {
        assert!(check_admissible(&[1, 1]).is_ok());
        assert!(check_admissible(&[2, 1]).is_ok());
        assert!(check_admissible(&[1, 2, 1]).is_err());
        assert!(check_admissible(&[1, 0]).is_err());
    }

    #[test]
    fn erdos_maps() {
        let net = scaled_erdos_net();
        let f = net.field().clone();
        let i0 = net.interval_of_word(&[0]);
        let inv_beta = RationalCombination::over_beta_pow(AlgebraicNumber::one(&f), 1);
        assert!(i0.length.equals(&inv_beta));
        let i2 = net.interval_of_word(&[2]);
        assert!(i2.left.equals(&RationalCombination::from_integer(&f, 1)));
    }
}
