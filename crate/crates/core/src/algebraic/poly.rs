//! Integer polynomials, coefficient vectors stored low degree first.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn trim(mut c: Vec<BigInt>) -> Vec<BigInt> {
    while c.len() > 1 && c.last().map_or(false, |x| x.is_zero()) {
        c.pop();
    }
    c
}

pub fn degree(c: &[BigInt]) -> usize {
    c.len().saturating_sub(1)
}

pub fn eval_rat(c: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for a in c.iter().rev() {
        acc = acc * x + BigRational::from_integer(a.clone());
    }
    acc
}

/// Interval Horner evaluation on [lo, hi] with 0 < lo.
pub fn eval_interval(c: &[BigInt], lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    debug_assert!(lo.is_positive() && lo <= hi);
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    for k in c.iter().rev() {
        let (na, nb) = if !a.is_negative() {
            (&a * lo, &b * hi)
        } else if !b.is_positive() {
            (&a * hi, &b * lo)
        } else {
            (&a * hi, &b * hi)
        };
        let k = BigRational::from_integer(k.clone());
        a = na + &k;
        b = nb + k;
    }
    (a, b)
}

pub fn derivative(c: &[BigInt]) -> Vec<BigInt> {
    if c.len() <= 1 {
        return vec![BigInt::zero()];
    }
    c.iter().enumerate().skip(1).map(|(i, a)| a * BigInt::from(i)).collect()
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m`, padded to `deg m` coefficients.
pub fn reduce(a: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
    let s = degree(m);
    let mut r: Vec<BigInt> = a.to_vec();
    if r.len() < s {
        r.resize(s, BigInt::zero());
        return r;
    }
    for top in (s..r.len()).rev() {
        let lead = std::mem::take(&mut r[top]);
        if lead.is_zero() {
            continue;
        }
        for k in 0..s {
            r[top - s + k] -= &lead * &m[k];
        }
    }
    r.truncate(s.max(1));
    if s == 0 {
        r.clear();
    }
    r
}

pub fn eval_complex(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut f = Complex64::new(0.0, 0.0);
    let mut df = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        df = df * z + f;
        f = f * z + a;
    }
    (f, df)
}

/// All complex roots of a monic polynomial by the Aberth iteration.
pub fn complex_roots(c: &[BigInt]) -> Vec<Complex64> {
    let n = degree(c);
    let cf: Vec<f64> = c.iter().map(|a| a.to_f64().unwrap_or(f64::MAX)).collect();
    if n == 1 {
        return vec![Complex64::new(-cf[0], 0.0)];
    }
    let bound = 1.0 + cf[..n].iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(0.5 * bound, t)
        })
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (f, df) = eval_complex(&cf, z[k]);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / df;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    s += 1.0 / (z[k] - z[j]);
                }
            }
            let w = ratio / (1.0 - ratio * s);
            z[k] -= w;
            moved = moved.max(w.norm() / z[k].norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Radius of a disc around `z` guaranteed to contain a root: n|f(z)|/|f'(z)|,
/// widened by a floating-point slack.
pub fn inclusion_radius(c: &[BigInt], z: Complex64) -> f64 {
    let n = degree(c) as f64;
    let cf: Vec<f64> = c.iter().map(|a| a.to_f64().unwrap_or(f64::MAX)).collect();
    let (f, df) = eval_complex(&cf, z);
    let scale: f64 = cf.iter().enumerate().map(|(i, a)| a.abs() * z.norm().powi(i as i32)).sum();
    let f_err = f.norm() + 4.0 * f64::EPSILON * n * scale;
    n * f_err / df.norm().max(f64::MIN_POSITIVE) + 1e-12 * z.norm().max(1.0)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let limit = n.to_u64().expect("constant term too large for divisor enumeration");
    let mut d = 1u64;
    while d * d <= limit {
        if limit % d == 0 {
            out.push(BigInt::from(d));
            if d * d != limit {
                out.push(BigInt::from(limit / d));
            }
        }
        d += 1;
    }
    let neg: Vec<BigInt> = out.iter().map(|x| -x).collect();
    out.extend(neg);
    out
}

/// Irreducibility over Q for monic polynomials of degree at most 4.
/// `Ok(None)` means irreducible, `Ok(Some(reason))` reducible.
pub fn reducibility_witness(c: &[BigInt]) -> Option<String> {
    let n = degree(c);
    if n <= 1 {
        return None;
    }
    if c[0].is_zero() {
        return Some("x divides the polynomial".into());
    }
    for r in divisors(&c[0]) {
        if eval_rat(c, &BigRational::from_integer(r.clone())).is_zero() {
            return Some(format!("integer root {r}"));
        }
    }
    if n == 4 {
        // (x^2 + a x + b)(x^2 + e x + d) with b d = c0.
        let (c1, c2, c3) = (&c[1], &c[2], &c[3]);
        for b in divisors(&c[0]) {
            let d = &c[0] / &b;
            let mut cands: Vec<BigInt> = Vec::new();
            if d != b {
                let num = c1 - &b * c3;
                let den = &d - &b;
                if (&num % &den).is_zero() {
                    cands.push(num / den);
                }
            } else if *c1 == &b * c3 {
                // a + e = c3, a e = c2 - 2b
                let disc = c3 * c3 - BigInt::from(4) * (c2 - BigInt::from(2) * &b);
                if !disc.is_negative() {
                    let s = disc.sqrt();
                    if &s * &s == disc {
                        for t in [c3 + &s, c3 - &s] {
                            if (&t % BigInt::from(2)).is_zero() {
                                cands.push(t / BigInt::from(2));
                            }
                        }
                    }
                }
            }
            for a in cands {
                let e = c3 - &a;
                let f = mul(&[b.clone(), a.clone(), BigInt::one()], &[d.clone(), e.clone(), BigInt::one()]);
                if f.as_slice() == c {
                    return Some(format!("quadratic factor x^2{a:+}x{b:+}"));
                }
            }
        }
    }
    None
}

/// Parse a polynomial in `x` such as `x^3-3x^2+1` or `x^2 - 5*x - 3`.
pub fn parse(text: &str) -> Result<Vec<BigInt>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let bytes = s.as_bytes();
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut pos = 0;
    let bad = |m: &str| Error::Parse(format!("polynomial '{text}': {m}"));
    while pos < bytes.len() {
        let mut sign = BigInt::one();
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            if bytes[pos] == b'-' {
                sign = -sign;
            }
            pos += 1;
        } else if pos > 0 {
            return Err(bad("expected + or -"));
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let has_num = pos > start;
        let coef: BigInt =
            if has_num { s[start..pos].parse().map_err(|_| bad("bad coefficient"))? } else { BigInt::one() };
        if pos < bytes.len() && bytes[pos] == b'*' {
            pos += 1;
        }
        let mut exp = 0usize;
        if pos < bytes.len() && bytes[pos] == b'x' {
            pos += 1;
            exp = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                let st = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                exp = s[st..pos].parse().map_err(|_| bad("bad exponent"))?;
            }
        } else if !has_num {
            return Err(bad("empty term"));
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        coeffs[exp] += sign * coef;
    }
    Ok(trim(coeffs))
}

pub fn format(c: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (i, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let neg = a.is_negative();
        let mag = a.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let unit = mag.is_one() && i > 0;
        if !unit {
            out.push_str(&mag.to_string());
        }
        match i {
            0 => {}
            1 => out.push_str(var),
            _ => out.push_str(&format!("{var}^{i}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("x^2-5x-3").unwrap(), v(&[-3, -5, 1]));
        assert_eq!(parse("x^3 - 3*x^2 + 1").unwrap(), v(&[1, 0, -3, 1]));
        assert_eq!(parse("x-3").unwrap(), v(&[-3, 1]));
        assert_eq!(format(&v(&[-3, -5, 1]), "x"), "x^2-5x-3");
        assert!(parse("x^2+").is_err());
    }

    #[test]
    fn reduce_by_golden() {
        let m = v(&[-1, -1, 1]);
        // x^2 = x + 1
        assert_eq!(reduce(&v(&[0, 0, 1]), &m), v(&[1, 1]));
        // x^3 = 2x + 1
        assert_eq!(reduce(&v(&[0, 0, 0, 1]), &m), v(&[1, 2]));
    }

    #[test]
    fn reducibility() {
        assert!(reducibility_witness(&v(&[-1, -1, 1])).is_none());
        assert!(reducibility_witness(&v(&[-4, 0, 1])).is_some());
        // (x^2+1)(x^2-3) = x^4 - 2x^2 - 3
        assert!(reducibility_witness(&v(&[-3, 0, -2, 0, 1])).is_some());
        // tetranacci is irreducible
        assert!(reducibility_witness(&v(&[-1, -1, -1, -1, 1])).is_none());
    }
}
