//! Continued fractions with partial quotients u_n = Σ_{i=1}^{a_n} α^{±i} and
//! partial numerators v_n = α^{±a_n}; the sign alternates with the parity of n + κ.

use crate::error::{Error, Result};

const RENORM_EVERY: usize = 32;

#[derive(Clone, Debug)]
pub struct CfParams {
    alpha: f64,
    kappa: u8,
    digits: Vec<u64>,
}

impl CfParams {
    pub fn new(alpha: f64, kappa: u8, digits: Vec<u64>) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::ContFrac(format!("α must be positive, got {alpha}")));
        }
        if kappa > 1 {
            return Err(Error::ContFrac("κ must be 0 or 1".into()));
        }
        if digits.is_empty() {
            return Err(Error::ContFrac("need at least a₀".into()));
        }
        if digits[1..].contains(&0) {
            return Err(Error::ContFrac("a_i must be positive for i ≥ 1".into()));
        }
        Ok(CfParams { alpha, kappa, digits })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn kappa(&self) -> u8 {
        self.kappa
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// min(√α, 1/√α)
    pub fn rho(&self) -> f64 {
        rho(self.alpha)
    }

    /// Ratio driving the n-th quotient: α if n + κ is even, 1/α otherwise.
    pub fn base(&self, n: usize) -> f64 {
        if (n + self.kappa as usize) % 2 == 0 {
            self.alpha
        } else {
            1.0 / self.alpha
        }
    }

    pub fn uv(&self, n: usize) -> (f64, f64) {
        uv(self.base(n), self.digits[n])
    }

    pub fn with_digits(&self, digits: Vec<u64>) -> Result<Self> {
        CfParams::new(self.alpha, self.kappa, digits)
    }
}

pub fn rho(alpha: f64) -> f64 {
    alpha.sqrt().min(1.0 / alpha.sqrt())
}

/// (x + x² + … + x^a, x^a); a = 0 gives (0, 1).
pub fn uv(x: f64, a: u64) -> (f64, f64) {
    let v = x.powf(a as f64);
    let u = if a == 0 {
        0.0
    } else if (x - 1.0).abs() < 1e-15 {
        a as f64
    } else if a <= 64 {
        let mut s = 0.0;
        let mut t = 1.0;
        for _ in 0..a {
            t *= x;
            s += t;
        }
        s
    } else {
        x * (1.0 - v) / (1.0 - x)
    };
    (u, v)
}

/// (p_n, q_n, p_{n-1}, q_{n-1}, v_n), up to a common positive factor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CfState {
    pub p: f64,
    pub q: f64,
    pub p_prev: f64,
    pub q_prev: f64,
    pub v: f64,
    pub n: usize,
    /// log |p_n q_{n-1} - p_{n-1} q_n| at the current scale
    pub log_det: f64,
}

impl CfState {
    pub fn value(&self) -> f64 {
        self.p / self.q
    }

    pub fn prev_value(&self) -> f64 {
        self.p_prev / self.q_prev
    }

    /// |p_n/q_n - p_{n-1}/q_{n-1}|
    pub fn delta(&self) -> f64 {
        (self.log_det - self.q.ln() - self.q_prev.ln()).exp()
    }

    /// Q(a₀, …, a_n)(x, y)ᵀ as a ratio.
    pub fn apply(&self, x: f64, y: f64) -> Result<f64> {
        let num = self.p * x + self.v * self.p_prev * y;
        let den = self.q * x + self.v * self.q_prev * y;
        if den <= 0.0 {
            return Err(Error::ContFrac("vanishing denominator".into()));
        }
        Ok(num / den)
    }

    /// Feed (u_{n+1}, v_{n+1}).
    pub fn push(&mut self, u: f64, v: f64) {
        let p = u * self.p + self.v * self.p_prev;
        let q = u * self.q + self.v * self.q_prev;
        self.log_det += self.v.ln();
        self.p_prev = self.p;
        self.q_prev = self.q;
        self.p = p;
        self.q = q;
        self.v = v;
        self.n += 1;
        if self.n % RENORM_EVERY == 0 {
            self.renormalize();
        }
    }

    pub fn renormalize(&mut self) {
        let s = self.p.abs().max(self.q.abs()).max(self.p_prev.abs()).max(self.q_prev.abs());
        if s > 0.0 && s.is_finite() {
            self.p /= s;
            self.log_det -= 2.0 * s.ln();
            self.q /= s;
            self.p_prev /= s;
            self.q_prev /= s;
        }
    }
}

/// State after a₀ …  a_n.
pub fn cf_state(params: &CfParams, n: usize) -> Result<CfState> {
    if n >= params.digits.len() {
        return Err(Error::ContFrac(format!("digit a_{n} not available")));
    }
    let (u0, v0) = params.uv(0);
    // seeds p_{-1} = 1, q_{-1} = 0, p_{-2} = 0, q_{-2} = 1, v_{-1} = 1
    let mut st = CfState { p: u0, q: 1.0, p_prev: 1.0, q_prev: 0.0, v: v0, n: 0, log_det: 0.0 };
    for k in 1..=n {
        let (u, v) = params.uv(k);
        st.push(u, v);
    }
    Ok(st)
}

/// [κ | a₀; a₁, …, a_n]
pub fn cf_eval(params: &CfParams, n: usize) -> Result<f64> {
    Ok(cf_state(params, n)?.value())
}

/// [κ | a₀; a₁, …, a_n | (x, y)ᵀ]
pub fn cf_eval_vector(params: &CfParams, n: usize, x: f64, y: f64) -> Result<f64> {
    if !(x >= 0.0 && y >= 0.0) || (x == 0.0 && y == 0.0) {
        return Err(Error::ContFrac("(x, y) must be nonnegative and nonzero".into()));
    }
    cf_state(params, n)?.apply(x, y)
}

/// Q_κ(a₀, …, a_n) as an explicit product of 2×2 matrices.
pub fn q_matrix(params: &CfParams, n: usize) -> [[f64; 2]; 2] {
    let mut acc = [[1.0, 0.0], [0.0, 1.0]];
    for k in 0..=n {
        let (u, v) = params.uv(k);
        let m = [[u, v], [1.0, 0.0]];
        let mut next = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                next[i][j] = acc[i][0] * m[0][j] + acc[i][1] * m[1][j];
            }
        }
        let s = next.iter().flatten().fold(0.0f64, |a, x| a.max(x.abs()));
        acc = next.map(|r| r.map(|x| x / s));
    }
    acc
}

/// |p_n/q_n - p_{n-1}/q_{n-1}|, n ≥ 1.
pub fn delta_n(params: &CfParams, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::ContFrac("δ_n needs n ≥ 1".into()));
    }
    let st = cf_state(params, n)?;
    // |det| / (q_n q_{n-1}) keeps full relative precision
    Ok(st.delta())
}

/// ρ^{a₁+…+a_n}/ρ^{2+2a₀+a_n} when α ≠ 1, 1/(a₀+…+a_n) when α = 1.
pub fn delta_bound(params: &CfParams, n: usize) -> f64 {
    let a = &params.digits;
    if params.alpha == 1.0 {
        return 1.0 / a[..=n].iter().sum::<u64>() as f64;
    }
    let r = params.rho();
    let s: u64 = a[1..=n].iter().sum();
    r.powf(s as f64 - 2.0 - 2.0 * a[0] as f64 - a[n] as f64)
}

/// Majorant Σ_{j≥0} ρ^{j-2} used for the truncation bound.
pub fn truncation_constant(rho: f64) -> Result<f64> {
    if !(rho < 1.0) {
        return Err(Error::ContFrac("truncation bound needs ρ < 1".into()));
    }
    Ok(1.0 / (rho * rho * (1.0 - rho)))
}

#[derive(Clone, Debug)]
pub enum Tail {
    /// a_{n+1} = ∞
    Infinity,
    /// Further digits a_{n+1}, a_{n+2}, … (until exhausted or converged).
    Stream(Vec<u64>),
}

/// [κ | a₀; a₁, …, a_n, ∞] or the limit along a digit stream.
pub fn cf_limit(params: &CfParams, tail: &Tail, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::ContFrac("tolerance must be positive".into()));
    }
    let n = params.digits.len() - 1;
    let st = cf_state(params, n)?;
    match tail {
        Tail::Infinity => {
            let x = params.base(n + 1);
            let eval = |k: u64| {
                let (u, _) = uv(x, k);
                (u * st.p + st.v * st.p_prev) / (u * st.q + st.v * st.q_prev)
            };
            let mut k = 1u64;
            let mut prev = eval(k);
            for _ in 0..62 {
                k *= 2;
                let cur = eval(k);
                if (cur - prev).abs() < tol {
                    return Ok(cur);
                }
                prev = cur;
            }
            Err(Error::ContFrac("∞-limit did not settle".into()))
        }
        Tail::Stream(more) => {
            let mut st = st;
            let mut last = st.value();
            for (i, &a) in more.iter().enumerate() {
                if a == 0 {
                    return Err(Error::ContFrac("a_i must be positive for i ≥ 1".into()));
                }
                let (u, v) = uv(params.base(n + 1 + i), a);
                st.push(u, v);
                let cur = st.value();
                if (cur - last).abs() < tol {
                    return Ok(cur);
                }
                last = cur;
            }
            Err(Error::ContFrac("digit stream exhausted before convergence".into()))
        }
    }
}

/// [κ | a₀; …, a_n, ∞] in closed form: the last quotient tends to x/(1-x) for
/// x < 1 and to ∞ otherwise.
pub fn cf_infinity_closed(params: &CfParams) -> Result<f64> {
    let n = params.digits.len() - 1;
    let st = cf_state(params, n)?;
    let x = params.base(n + 1);
    if x < 1.0 {
        let u = x / (1.0 - x);
        Ok((u * st.p + st.v * st.p_prev) / (u * st.q + st.v * st.q_prev))
    } else {
        Ok(st.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_case() {
        let p = CfParams::new(1.0, 0, vec![1, 2]).unwrap();
        assert!((cf_eval(&p, 1).unwrap() - 1.5).abs() < 1e-15);
        let ones = CfParams::new(1.0, 0, vec![1; 60]).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((cf_eval(&ones, 59).unwrap() - phi).abs() < 1e-14);
    }

    #[test]
    fn vector_seed() {
        let p = CfParams::new(0.3, 1, vec![0, 2, 1, 3]).unwrap();
        let a = cf_eval(&p, 2).unwrap();
        assert!((cf_eval_vector(&p, 2, 1.0, 0.0).unwrap() - a).abs() < 1e-15);
        let (u3, _) = p.uv(3);
        assert!((cf_eval_vector(&p, 2, u3, 1.0).unwrap() - cf_eval(&p, 3).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn infinity_limits_agree() {
        for (alpha, kappa) in [(0.4, 0), (0.4, 1), (2.5, 0), (1.0, 1)] {
            let p = CfParams::new(alpha, kappa, vec![1, 2, 1]).unwrap();
            let a = cf_limit(&p, &Tail::Infinity, 1e-13).unwrap();
            let b = cf_infinity_closed(&p).unwrap();
            assert!((a - b).abs() < 1e-9, "{alpha} {kappa}: {a} vs {b}");
        }
    }
}
