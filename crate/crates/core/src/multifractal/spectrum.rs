use rayon::prelude::*;

use super::partition::PartitionScheme;
use crate::error::{Error, Result};
use crate::fit::line_fit;
use crate::measures::MatrixMeasure;

#[derive(Clone, Debug)]
pub struct SpectrumConfig {
    pub qmin: f64,
    pub qmax: f64,
    pub qstep: f64,
    /// deepest cover is at exponent level depth · (smallest net exponent)
    pub depth: u32,
    /// number of covers in the regression
    pub scales: usize,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        SpectrumConfig { qmin: -20.0, qmax: 20.0, qstep: 0.25, depth: 14, scales: 4 }
    }
}

impl SpectrumConfig {
    pub fn grid(&self) -> Result<Vec<f64>> {
        if !(self.qstep > 0.0) || self.qmax < self.qmin {
            return Err(Error::Spectrum("bad q grid".into()));
        }
        let n = ((self.qmax - self.qmin) / self.qstep + 1e-9).floor() as usize;
        Ok((0..=n).map(|i| self.qmin + i as f64 * self.qstep).collect())
    }

    /// Exponent levels of the covers, shallowest first.
    pub fn levels(&self, scheme: &PartitionScheme) -> Result<Vec<u32>> {
        let step = scheme.min_exponent();
        let top = self.depth * step;
        if self.scales < 2 || (self.scales as u32 - 1) * step >= top {
            return Err(Error::Spectrum(format!("depth {} too small for {} scales", self.depth, self.scales)));
        }
        Ok((0..self.scales as u32).rev().map(|k| top - k * step).collect())
    }
}

/// τ̂ on a q grid, with the covers it was fitted on.
#[derive(Clone, Debug)]
pub struct TauCurve {
    pub qs: Vec<f64>,
    pub tau: Vec<f64>,
    /// max deviation of log Σ η^q from the fitted line
    pub err: Vec<f64>,
    pub levels: Vec<u32>,
    pub log_r: Vec<f64>,
    pub words: Vec<usize>,
}

impl TauCurve {
    pub fn at(&self, q: f64) -> Option<(f64, f64)> {
        self.qs.iter().position(|x| (x - q).abs() < 1e-12).map(|i| (self.tau[i], self.err[i]))
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("q,tau,err\n");
        for i in 0..self.qs.len() {
            s.push_str(&format!("{},{},{}\n", fmt_g(self.qs[i]), fmt_g(self.tau[i]), fmt_g(self.err[i])));
        }
        s
    }
}

/// "%.12g"-style formatting.
pub fn fmt_g(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    // exponent after rounding to 12 significant digits
    let sci = format!("{:.11e}", x);
    let (mant, e) = sci.split_once('e').unwrap();
    let exp: i32 = e.parse().unwrap();
    if !(-4..12).contains(&exp) {
        let mant = strip_zeros(mant);
        return format!("{mant}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let decimals = (11 - exp).max(0) as usize;
    strip_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn log_sum_exp(vals: &[f64], q: f64) -> f64 {
    let mut m = f64::NEG_INFINITY;
    for &v in vals {
        if v.is_finite() {
            m = m.max(q * v);
        }
    }
    if m == f64::NEG_INFINITY {
        return m;
    }
    let s: f64 = vals.iter().filter(|v| v.is_finite()).map(|&v| (q * v - m).exp()).sum();
    m + s.ln()
}

/// Slope of log Σ η⟦w⟧^q against log r over the deepest covers.
pub fn tau_estimate(measure: &MatrixMeasure<f64>, scheme: &PartitionScheme, cfg: &SpectrumConfig) -> Result<TauCurve> {
    let qs = cfg.grid()?;
    let levels = cfg.levels(scheme)?;
    let covers: Vec<Vec<f64>> = levels.iter().map(|&e| scheme.log_values(measure, e)).collect::<Result<_>>()?;
    let log_r: Vec<f64> = levels.iter().map(|&e| scheme.log_scale(e)).collect();
    let fits: Vec<(f64, f64)> = qs
        .par_iter()
        .map(|&q| {
            let ys: Vec<f64> = covers.iter().map(|c| log_sum_exp(c, q)).collect();
            let f = line_fit(&log_r, &ys);
            (f.slope, f.max_residual)
        })
        .collect();
    if fits.iter().any(|(t, e)| !t.is_finite() || !e.is_finite()) {
        return Err(Error::Spectrum("non-finite partition sum".into()));
    }
    Ok(TauCurve {
        tau: fits.iter().map(|f| f.0).collect(),
        err: fits.iter().map(|f| f.1).collect(),
        words: covers.iter().map(|c| c.len()).collect(),
        qs,
        levels,
        log_r,
    })
}

/// Legendre transform of the concave hull of τ.
#[derive(Clone, Debug)]
pub struct Legendre {
    /// hull vertices (q, τ)
    pub hull: Vec<(f64, f64)>,
    /// (α, f(α)) per hull segment, α increasing
    pub curve: Vec<(f64, f64)>,
    pub alpha_min: f64,
    pub alpha_max: f64,
    /// grid index bounds of the first and last hull segments
    pub first_segment: (usize, usize),
    pub last_segment: (usize, usize),
}

pub fn legendre(qs: &[f64], tau: &[f64]) -> Result<Legendre> {
    if qs.len() < 3 || qs.len() != tau.len() {
        return Err(Error::Spectrum("need at least three grid points".into()));
    }
    // upper hull by monotone chain
    let mut idx: Vec<usize> = Vec::new();
    for i in 0..qs.len() {
        while idx.len() >= 2 {
            let (a, b) = (idx[idx.len() - 2], idx[idx.len() - 1]);
            let cross = (qs[b] - qs[a]) * (tau[i] - tau[a]) - (tau[b] - tau[a]) * (qs[i] - qs[a]);
            if cross >= 0.0 {
                idx.pop();
            } else {
                break;
            }
        }
        idx.push(i);
    }
    let hull: Vec<(f64, f64)> = idx.iter().map(|&i| (qs[i], tau[i])).collect();
    let mut curve: Vec<(f64, f64)> = hull
        .windows(2)
        .map(|s| {
            let a = (s[1].1 - s[0].1) / (s[1].0 - s[0].0);
            (a, a * s[0].0 - s[0].1)
        })
        .collect();
    let alpha_max = curve[0].0;
    let alpha_min = curve[curve.len() - 1].0;
    curve.reverse();
    Ok(Legendre {
        first_segment: (idx[0], idx[1]),
        last_segment: (idx[idx.len() - 2], idx[idx.len() - 1]),
        hull,
        curve,
        alpha_min,
        alpha_max,
    })
}

impl Legendre {
    /// Hulled τ at q, by interpolation between vertices.
    pub fn hull_at(&self, q: f64) -> f64 {
        let h = &self.hull;
        let k = h.partition_point(|v| v.0 < q).clamp(1, h.len() - 1);
        let (a, b) = (h[k - 1], h[k]);
        a.1 + (b.1 - a.1) * (q - a.0) / (b.0 - a.0)
    }

    /// inf over the curve of αq - f(α): the transform taken back.
    pub fn back(&self, q: f64) -> f64 {
        self.curve.iter().map(|(a, f)| a * q - f).fold(f64::INFINITY, f64::min)
    }

    /// inf over hull vertices of αq - τ(q).
    pub fn f_at(&self, alpha: f64) -> f64 {
        self.hull.iter().map(|(q, t)| alpha * q - t).fold(f64::INFINITY, f64::min)
    }

    pub fn peak(&self) -> f64 {
        self.curve.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest |back(q) - hull(q)| over the grid.
    pub fn idempotence_defect(&self, qs: &[f64]) -> f64 {
        qs.iter().map(|&q| (self.back(q) - self.hull_at(q)).abs()).fold(0.0, f64::max)
    }

    /// Central-difference τ′ of the hull.
    pub fn slope_at(&self, q: f64, h: f64) -> f64 {
        (self.hull_at(q + h) - self.hull_at(q - h)) / (2.0 * h)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("alpha,f\n");
        for (a, f) in &self.curve {
            s.push_str(&format!("{},{}\n", fmt_g(*a), fmt_g(*f)));
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct SpectrumEstimate {
    pub tau: TauCurve,
    pub legendre: Legendre,
    pub alpha_min_err: f64,
    pub alpha_max_err: f64,
    /// q in [-8, -2] with the largest |Δ²τ|, and that value
    pub kink: Option<(f64, f64)>,
}

pub fn spectrum(
    measure: &MatrixMeasure<f64>,
    scheme: &PartitionScheme,
    cfg: &SpectrumConfig,
) -> Result<SpectrumEstimate> {
    let tau = tau_estimate(measure, scheme, cfg)?;
    let legendre = legendre(&tau.qs, &tau.tau)?;
    let seg_err = |(a, b): (usize, usize)| (tau.err[a] + tau.err[b]) / (tau.qs[b] - tau.qs[a]);
    let alpha_max_err = seg_err(legendre.first_segment);
    let alpha_min_err = seg_err(legendre.last_segment);
    let kink = kink_scan(&tau.qs, &tau.tau, -8.0, -2.0);
    Ok(SpectrumEstimate { tau, legendre, alpha_min_err, alpha_max_err, kink })
}

pub fn kink_scan(qs: &[f64], tau: &[f64], lo: f64, hi: f64) -> Option<(f64, f64)> {
    (1..qs.len().saturating_sub(1))
        .filter(|&i| qs[i] >= lo && qs[i] <= hi)
        .map(|i| (qs[i], tau[i + 1] - 2.0 * tau[i] + tau[i - 1]))
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(fmt_g(0.25), "0.25");
        assert_eq!(fmt_g(-20.0), "-20");
        assert_eq!(fmt_g(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_g(1e-7), "1e-07");
        assert_eq!(fmt_g(123456.0), "123456");
        assert_eq!(fmt_g(4.57763671875e-5), "4.57763671875e-05");
        assert_eq!(fmt_g(0.0001), "0.0001");
        assert_eq!(fmt_g(9.9999999999999e-5), "0.0001");
        assert_eq!(fmt_g(999999999999.9), "1e+12");
    }

    #[test]
    fn legendre_of_parabola() {
        let qs: Vec<f64> = (-40..=40).map(|i| i as f64 * 0.25).collect();
        let tau: Vec<f64> = qs.iter().map(|q| q - 1.0 - 0.1 * q * q + 0.1).collect();
        let l = legendre(&qs, &tau).unwrap();
        assert!(l.idempotence_defect(&qs) < 1e-12);
        assert!((l.peak() + tau[40]).abs() < 0.05);
        assert!(l.alpha_min < l.alpha_max);
    }

    #[test]
    fn hull_drops_dents() {
        let qs = [0.0, 1.0, 2.0, 3.0];
        let tau = [0.0, 0.5, 0.2, 0.0];
        let l = legendre(&qs, &tau).unwrap();
        assert_eq!(l.hull.len(), 3);
        assert!(legendre(&qs[..2], &tau[..2]).is_err());
    }
}
