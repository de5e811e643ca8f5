//! The limit potential Φ of μ* in closed form (continued fractions) and by
//! the transfer route (matrix products against the rank-one terminal vectors).

use crate::betanet::multinacci_xy;
use crate::contfrac::{cf_eval_vector, cf_infinity_closed, cf_limit, CfParams, Tail};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct LimitPotential {
    m: usize,
    p: f64,
    q: f64,
    alpha: f64,
}

/// Parsed prefix ⟨κ⋆m | a₁, …, a_n⟩ j.
#[derive(Clone, Debug, PartialEq)]
pub struct Parsed {
    pub kappa: u8,
    pub blocks: Vec<u64>,
    pub j: usize,
}

impl LimitPotential {
    pub fn new(m: usize, p: f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::Digits("multinacci degree must be at least 2".into()));
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Probabilities("need 0 < p < 1".into()));
        }
        let q = 1.0 - p;
        Ok(LimitPotential { m, p, q, alpha: (q / p).powi(m as i32 - 1) })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn letters(&self) -> usize {
        self.m * (self.m - 1) + 1
    }

    fn is_block_letter(&self, c: usize) -> bool {
        c == 0 || c == self.m
    }

    pub fn xi(&self, j: usize) -> f64 {
        let (m, p, q, a) = (self.m as i32, self.p, self.q, self.alpha);
        if j == 0 {
            p.powi(m) * a * a
        } else if j < self.m {
            p.powi(m) * q.powi(j as i32) * (1.0 + a)
        } else if j == self.m {
            q.powi(m) / (a * a)
        } else {
            let (x, y) = multinacci_xy(self.m, j);
            p.powi(x as i32 + 1) * q.powi(y as i32 + 1)
        }
    }

    /// Column spanning the range of P_j for j ∉ {0, m}.
    pub fn x_vec(&self, j: usize) -> [f64; 2] {
        if j < self.m {
            [1.0, self.alpha]
        } else {
            [1.0, 0.0]
        }
    }

    /// Splits a word at its first letter outside {0, m}.
    pub fn parse(&self, word: &[usize]) -> Result<Parsed> {
        if let Some(&c) = word.iter().find(|&&c| c >= self.letters()) {
            return Err(Error::Letter { letter: c, size: self.letters() });
        }
        let pos = word
            .iter()
            .position(|&c| !self.is_block_letter(c))
            .ok_or_else(|| Error::Hypothesis("prefix lies in {0, m}*; use phi_infinity".into()))?;
        let (kappa, blocks) = self.blocks(&word[..pos]);
        Ok(Parsed { kappa, blocks, j: word[pos] })
    }

    fn blocks(&self, w: &[usize]) -> (u8, Vec<u64>) {
        let kappa = u8::from(w.first() == Some(&self.m));
        let mut blocks: Vec<u64> = Vec::new();
        let mut last = None;
        for &c in w {
            if Some(c) == last {
                *blocks.last_mut().unwrap() += 1;
            } else {
                blocks.push(1);
                last = Some(c);
            }
        }
        (kappa, blocks)
    }

    /// Φ(w j ω); only the prefix through the first letter outside {0, m} matters.
    pub fn phi(&self, word: &[usize]) -> Result<f64> {
        let parsed = self.parse(word)?;
        if parsed.blocks.is_empty() {
            return Ok(self.xi(parsed.j).ln());
        }
        let k = parsed.kappa;
        let khat = 1 - k;
        let n = parsed.blocks.len();
        let mut digits = vec![1u64];
        digits.extend(&parsed.blocks);
        let cf = CfParams::new(self.alpha, khat, digits)?;
        let mut x = self.x_vec(parsed.j);
        if (khat as usize + n) % 2 == 1 {
            x.swap(0, 1);
        }
        let v = cf_eval_vector(&cf, n, x[0], x[1])?;
        Ok((self.xi(k as usize * self.m) * v).ln())
    }

    /// Φ on w·c^∞ for w ∈ {0, m}⁺ ending in c: the last block becomes ∞.
    pub fn phi_infinity(&self, word: &[usize]) -> Result<f64> {
        if word.is_empty() || !word.iter().all(|&c| self.is_block_letter(c)) {
            return Err(Error::Hypothesis("need a nonempty word over {0, m}".into()));
        }
        let (k, blocks) = self.blocks(word);
        let mut digits = vec![1u64];
        digits.extend(&blocks[..blocks.len() - 1]);
        let cf = CfParams::new(self.alpha, 1 - k, digits)?;
        let v = if self.alpha == 1.0 { cf_limit(&cf, &Tail::Infinity, 1e-13)? } else { cf_infinity_closed(&cf)? };
        Ok((self.xi(k as usize * self.m) * v).ln())
    }

    /// Φ on the infinite block stream ⟨κ⋆m | a₁, a₂, …⟩.
    pub fn phi_stream(&self, kappa: u8, blocks: &[u64], tol: f64) -> Result<f64> {
        let cf = CfParams::new(self.alpha, 1 - kappa, vec![1, blocks[0]])?;
        let v = cf_limit(&cf, &Tail::Stream(blocks[1..].to_vec()), tol)?;
        Ok((self.xi(kappa as usize * self.m) * v).ln())
    }
}

/// 2×2 transfer data for μ*: Φ(ξ₀ξ₁…ξ_{k-1} j …) = log(L P_{ξ₀} Y / L Y) with Y = P_{ξ₁…ξ_{k-1}} X_j.
#[derive(Clone, Debug)]
pub struct Transfer {
    pub mats: Vec<[[f64; 2]; 2]>,
    pub r: [f64; 2],
    pub xs: Vec<Option<[f64; 2]>>,
}

impl Transfer {
    pub fn new(pot: &LimitPotential, mats: Vec<[[f64; 2]; 2]>, r: [f64; 2]) -> Self {
        let xs = (0..mats.len()).map(|j| if j == 0 || j == pot.m { None } else { Some(pot.x_vec(j)) }).collect();
        Transfer { mats, r, xs }
    }

    pub fn apply(&self, c: usize, y: [f64; 2]) -> [f64; 2] {
        let a = &self.mats[c];
        let v = [a[0][0] * y[0] + a[0][1] * y[1], a[1][0] * y[0] + a[1][1] * y[1]];
        let s = v[0] + v[1];
        if s > 0.0 {
            [v[0] / s, v[1] / s]
        } else {
            v
        }
    }

    /// Normalized P_w y.
    pub fn push(&self, w: &[usize], mut y: [f64; 2]) -> [f64; 2] {
        for &c in w.iter().rev() {
            y = self.apply(c, y);
        }
        y
    }

    pub fn log_ratio(&self, first: usize, y: [f64; 2]) -> f64 {
        let a = &self.mats[first];
        let top = (a[0][0] + a[1][0]) * y[0] + (a[0][1] + a[1][1]) * y[1];
        (top / (y[0] + y[1])).ln()
    }

    /// Direction of P_t X for a tail t = t' j, j ∉ {0, m}.
    pub fn tail_vector(&self, tail: &[usize]) -> Result<[f64; 2]> {
        let (&j, rest) = tail.split_last().ok_or_else(|| Error::Hypothesis("empty tail".into()))?;
        let x = self.xs[j].ok_or_else(|| Error::Hypothesis("tail must end outside {0, m}".into()))?;
        Ok(self.push(rest, x))
    }

    pub fn phi(&self, word: &[usize]) -> Result<f64> {
        let pos = word
            .iter()
            .position(|&c| self.xs[c].is_some())
            .ok_or_else(|| Error::Hypothesis("prefix lies in {0, m}*".into()))?;
        if pos == 0 {
            return Ok(self.log_ratio(word[0], self.r));
        }
        let y = self.tail_vector(&word[1..=pos])?;
        Ok(self.log_ratio(word[0], y))
    }
}

/// f(a₀, …, a_{2n}) = 1 + 1/(a₀ + 1/(a₁ + … + 1/(a_{2n} + 1))); the empty list gives 1.
pub fn erdos_f(a: &[u64]) -> f64 {
    let Some((&last, rest)) = a.split_last() else { return 1.0 };
    let mut t = last as f64 + 1.0;
    for &x in rest.iter().rev() {
        t = x as f64 + 1.0 / t;
    }
    1.0 + 1.0 / t
}

/// Φ of the uniform Erdős measure μ̃* on words 0^{a₀}2^{a₁}⋯1… or 2^{a₀}0^{a₁}⋯1….
pub fn erdos_uniform_phi(word: &[usize]) -> Result<f64> {
    if let Some(&c) = word.iter().find(|&&c| c > 2) {
        return Err(Error::Letter { letter: c, size: 3 });
    }
    let pos = word.iter().position(|&c| c == 1).ok_or_else(|| Error::Hypothesis("word has no letter 1".into()))?;
    let mut blocks: Vec<u64> = Vec::new();
    let mut last = None;
    for &c in &word[..pos] {
        if Some(c) == last {
            *blocks.last_mut().unwrap() += 1;
        } else {
            blocks.push(1);
            last = Some(c);
        }
    }
    if blocks.len() % 2 == 0 && !blocks.is_empty() {
        blocks.push(0);
    }
    Ok((erdos_f(&blocks) / 4.0).ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_values() {
        assert_eq!(erdos_f(&[]), 1.0);
        assert_eq!(erdos_f(&[1]), 1.5);
        assert!((erdos_f(&[1, 1, 0]) - 5.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn head_letter() {
        let pot = LimitPotential::new(2, 0.4).unwrap();
        let (p, q) = (0.4f64, 0.6f64);
        let want = (p * p * q * (1.0 + q / p)).ln();
        assert!((pot.phi(&[1, 0, 2]).unwrap() - want).abs() < 1e-15);
        assert!(pot.phi(&[0, 2, 0]).is_err());
    }
}
