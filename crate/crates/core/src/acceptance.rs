//! The bundled acceptance suite: one check per criterion, each reporting
//! pass/fail with the measured numbers.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebraic::{AlgebraicNumber, NumberField};
use crate::contfrac::{cf_eval, cf_state, delta_bound, q_matrix, truncation_constant, CfParams};
use crate::error::{Error, Result};
use crate::gibbs::{counterexample_probe, witness_ratios, DecayClass, GapConfig, GapStudy, ProbeVerdict};
use crate::iset::{build_iset, multinacci_closed_form, Caps, DigitParams, ISet};
use crate::measures::{brute_force_enclosure, for_each_word, ErdosModel, MatrixMeasure, MultinacciModel, OracleConfig};
use crate::multifractal::{
    erdos_domain_check, erdos_scheme, multinacci_scheme, spectrum, DomainVerdict, SpectrumConfig,
};
use crate::transmat::{build_matrices, parse_rational, MatrixFamily};

/// Criteria whose failure is documented and expected.
pub const EXPECTED_FAILURES: &[&str] = &["7b", "8a"];

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl Outcome {
    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        let note = if !self.passed && EXPECTED_FAILURES.contains(&self.id) { " [expected]" } else { "" };
        format!("{tag} {:<3} {}{note} ({:.2} s): {}", self.id, self.title, self.seconds, self.detail)
    }
}

type Check = fn() -> Result<(bool, String)>;

const CHECKS: &[(&str, &str, Check)] = &[
    ("1", "I-set golden sets", iset_golden),
    ("2", "matrix golden entries", matrix_golden),
    ("3", "Erdős closed form", erdos_closed_form),
    ("4", "μ/μ̃* bounds on all words", erdos_ratio_bounds),
    ("5", "oracle equivalence", oracle_equivalence),
    ("6", "additivity and total mass", additivity),
    ("7a", "continued-fraction contraction bounds", contfrac_bounds),
    ("7b", "convergent difference bound", contfrac_convergents),
    ("8a", "m=2 p=0.3 exponential rate", || gap_rate(2, 0.3)),
    ("8b", "m=2 p=1/2 harmonic decay", harmonic_decay),
    ("8c", "m=3 p=0.6 exponential class", || gap_rate(3, 0.6)),
    ("8d", "weak Gibbs sandwich", sandwich),
    ("9a", "Erdős witness ratio grows like n", erdos_witness),
    ("9b", "m=3 counterexample probe", probe),
    ("10", "spectrum sanity", spectrum_sanity),
    ("11", "domain disconnection", domain),
    ("12", "Garsia separation", garsia),
];

pub fn ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.0).collect()
}

pub fn run_one(id: &str) -> Option<Outcome> {
    let &(id, title, f) = CHECKS.iter().find(|c| c.0 == id)?;
    let t = Instant::now();
    let (passed, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Some(Outcome { id, title, passed, detail, seconds: t.elapsed().as_secs_f64() })
}

pub fn run_all() -> Vec<Outcome> {
    CHECKS.iter().map(|c| run_one(c.0).expect("known id")).collect()
}

/// True when the failures are exactly the documented ones.
pub fn matches_expectations(outcomes: &[Outcome]) -> bool {
    let mut failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    let mut want: Vec<&str> = EXPECTED_FAILURES.to_vec();
    failed.sort();
    want.sort();
    failed == want
}

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn iset_of(field: &Arc<NumberField>, d: u32) -> Result<ISet> {
    let params = DigitParams::new(field, d)?;
    Ok(build_iset(field, &params, Caps::default())?.0)
}

fn same_set(set: &ISet, want: &[AlgebraicNumber]) -> bool {
    set.len() == want.len() && want.iter().all(|x| set.index_of(x).is_some())
}

fn cubic_list(f: &Arc<NumberField>) -> Vec<AlgebraicNumber> {
    [vec![0], vec![1], vec![-2, 1], vec![-2, -2, 1], vec![-3, -2, 1], vec![0, -3, 1], vec![1, -3, 1], vec![-3, 1]]
        .iter()
        .map(|c| AlgebraicNumber::from_i64s(f, c))
        .collect()
}

fn iset_golden() -> Result<(bool, String)> {
    let mut ok = true;
    let mut slowest: f64 = 0.0;
    let mut timed = |f: &dyn Fn() -> Result<bool>| -> Result<()> {
        let t = Instant::now();
        ok &= f()?;
        slowest = slowest.max(t.elapsed().as_secs_f64());
        Ok(())
    };
    timed(&|| {
        let f = NumberField::from_descriptor("x^2-5x-3@5.5")?;
        let want = [AlgebraicNumber::zero(&f), AlgebraicNumber::one(&f), AlgebraicNumber::from_i64s(&f, &[-5, 1])];
        Ok(same_set(&iset_of(&f, 6)?, &want))
    })?;
    timed(&|| {
        let f = NumberField::from_descriptor("x^3-3x^2+1@2.8")?;
        Ok(same_set(&iset_of(&f, 3)?, &cubic_list(&f)))
    })?;
    for m in 2..=6 {
        timed(&|| {
            let f = NumberField::multinacci(m);
            let set = iset_of(&f, 2)?;
            Ok(set.len() == m + 1 && same_set(&set, &multinacci_closed_form(&f, m)))
        })?;
    }
    let ok = ok && slowest < 1.0;
    Ok((ok, format!("quadratic, cubic and multinacci m=2..6 sets; slowest {slowest:.3} s")))
}

/// Compares `fam` with the expected symbol table under the state relabelling `perm`
/// (listed index → computed index). Symbols are indices into `probs`, or None for 0.
fn family_matches(
    fam: &MatrixFamily<BigRational>,
    perm: &[usize],
    probs: &[BigRational],
    want: impl Fn(usize, usize, usize) -> Option<usize>,
) -> bool {
    (0..fam.len()).all(|i| {
        let m = fam.get(i);
        (0..perm.len()).all(|h| {
            (0..perm.len()).all(|k| {
                let expect = want(i, h, k).map_or(BigRational::zero(), |j| probs[j].clone());
                *m.get(perm[h], perm[k]) == expect
            })
        })
    })
}

fn matrices_for(field: &Arc<NumberField>, probs: &[BigRational]) -> Result<(ISet, MatrixFamily<BigRational>)> {
    let params = DigitParams::new(field, probs.len() as u32)?;
    let (set, edges) = build_iset(field, &params, Caps::default())?;
    let fam = build_matrices(&set, &edges, &params, probs)?;
    Ok((set, fam))
}

fn permutation(set: &ISet, listed: &[AlgebraicNumber]) -> Result<Vec<usize>> {
    listed
        .iter()
        .map(|x| set.index_of(x).ok_or_else(|| Error::Dimension(format!("{x} missing from the I-set"))))
        .collect()
}

fn matrix_golden() -> Result<(bool, String)> {
    // distinct probabilities make every symbol identifiable
    let f = NumberField::from_descriptor("x^2-5x-3@5.5")?;
    let probs: Vec<BigRational> = (1..=6).map(|j| r(j, 21)).collect();
    let (set, fam) = matrices_for(&f, &probs)?;
    let perm = permutation(
        &set,
        &[AlgebraicNumber::zero(&f), AlgebraicNumber::one(&f), AlgebraicNumber::from_i64s(&f, &[-5, 1])],
    )?;
    let sym = |i: usize, off: i64| {
        let j = i as i64 + off;
        (0..6).contains(&j).then_some(j as usize)
    };
    let quad = family_matches(&fam, &perm, &probs, |i, h, k| match (h, k) {
        (0, 0) => sym(i, 0),
        (0, 1) => sym(i, -1),
        (1, 2) => sym(i, 5),
        (2, 0) => sym(i, 3),
        (2, 1) => sym(i, 2),
        _ => None,
    });

    let f = NumberField::from_descriptor("x^3-3x^2+1@2.8")?;
    let probs = vec![r(1, 6), r(2, 6), r(3, 6)];
    let (set, fam) = matrices_for(&f, &probs)?;
    let perm = permutation(&set, &cubic_list(&f))?;
    // (row, col, symbol) with p, q, r = 0, 1, 2
    let cubic: [&[(usize, usize, usize)]; 3] = [
        &[(0, 0, 0), (1, 2, 2), (2, 3, 2), (3, 3, 1), (3, 4, 2), (6, 2, 1), (6, 7, 2), (7, 5, 0)],
        &[(0, 0, 1), (0, 1, 0), (3, 3, 2), (4, 5, 0), (5, 0, 0), (6, 2, 2), (7, 5, 1), (7, 6, 0)],
        &[(0, 0, 2), (0, 1, 1), (4, 5, 1), (4, 6, 0), (5, 0, 1), (5, 1, 0), (7, 5, 2), (7, 6, 1)],
    ];
    let cub =
        family_matches(&fam, &perm, &probs, |i, h, k| cubic[i].iter().find(|e| e.0 == h && e.1 == k).map(|e| e.2));

    let mut multi = true;
    for m in 2..=6 {
        let f = NumberField::multinacci(m);
        let probs = vec![r(1, 3), r(2, 3)];
        let (set, fam) = matrices_for(&f, &probs)?;
        let perm = permutation(&set, &multinacci_closed_form(&f, m))?;
        multi &= family_matches(&fam, &perm, &probs, |i, h, k| match (i, h, k) {
            (0, 0, 0) => Some(0),
            (0, h, k) if h >= 1 && h < m && k == h + 1 => Some(1),
            (0, h, 0) if h == m => Some(1),
            (0, h, 1) if h == m => Some(0),
            (1, 0, 0) => Some(1),
            (1, 0, 1) => Some(0),
            (1, h, 1) if h == m => Some(1),
            _ => None,
        });
    }
    Ok((quad && cub && multi, format!("quadratic {quad}, cubic {cub}, multinacci m=2..6 {multi}")))
}

fn erdos_closed_form() -> Result<(bool, String)> {
    let mu = ErdosModel::new(r(1, 2))?.mu();
    let mut bad = Vec::new();
    for n in 1..=20usize {
        let mut w = vec![2];
        w.extend(std::iter::repeat(0).take(n - 1));
        let want = BigRational::new(BigInt::from(n), BigInt::from(3) * num_traits::pow(BigInt::from(4), n - 1));
        if mu.eval(&w)? != want {
            bad.push(n);
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { "n = 1..20 exact".into() } else { format!("mismatch at n = {bad:?}") }))
}

fn values(measure: &MatrixMeasure<BigRational>, n: usize) -> Vec<(Vec<usize>, BigRational)> {
    let mut out = Vec::new();
    for_each_word(measure, n, &mut |w, v| out.push((w.to_vec(), v.clone())));
    out
}

fn erdos_ratio_bounds() -> Result<(bool, String)> {
    let model = ErdosModel::new(r(1, 2))?;
    let (mu, star) = (model.mu(), model.mu_tilde_star());
    let results: Vec<(bool, bool, usize)> = (1..=10usize)
        .into_par_iter()
        .map(|n| {
            let a = values(&mu, n);
            let b = values(&star, n);
            let lo = BigRational::new(8.into(), BigInt::from(3 * (n + 2)));
            let hi = r(8, 3);
            let mut bounds = true;
            let mut witness = true;
            for ((w, x), (_, y)) in a.iter().zip(&b) {
                let ratio = x / y;
                bounds &= lo <= ratio && ratio <= hi;
                if w[0] == 1 {
                    witness &= ratio == r(4, 3);
                }
            }
            (bounds, witness, a.len())
        })
        .collect();
    let words: usize = results.iter().map(|x| x.2).sum();
    let ok = results.iter().all(|x| x.0 && x.1);
    Ok((
        ok,
        format!(
            "{words} words n ≤ 10, bounds {}, 4/3 on words 1w {}",
            results.iter().all(|x| x.0),
            results.iter().all(|x| x.1)
        ),
    ))
}

fn oracle_equivalence() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    let mut misses = 0;
    for p in [r(1, 2), r(3, 10)] {
        let model = ErdosModel::new(p.clone())?;
        let net = model.net();
        let mu = model.mu();
        let pf = num_traits::ToPrimitive::to_f64(&p).unwrap();
        let mut words = Vec::new();
        for_each_word(&mu, 5, &mut |w, v| words.push((w.to_vec(), num_traits::ToPrimitive::to_f64(v).unwrap())));
        let res: Vec<Result<(bool, f64)>> = words
            .par_iter()
            .map(|(w, v)| {
                let iv = net.interval_of_word(w);
                let e = brute_force_enclosure(
                    net.field(),
                    &[pf, 1.0 - pf],
                    &iv.left,
                    &iv.right(),
                    OracleConfig::default(),
                )?;
                Ok((e.contains(*v, 1e-12), e.hi - e.lo))
            })
            .collect();
        for x in res {
            let (inside, width) = x?;
            misses += usize::from(!inside);
            worst = worst.max(width);
        }
    }
    Ok((misses == 0, format!("2×243 intervals, {misses} outside, widest enclosure {worst:.2e}")))
}

fn additive(measure: &MatrixMeasure<BigRational>, max_len: usize) -> bool {
    (0..=max_len).all(|n| {
        let parents = values(measure, n);
        let children = values(measure, n + 1);
        let s = measure.letters();
        parents.iter().enumerate().all(|(i, (_, v))| {
            let sum: BigRational = children[i * s..(i + 1) * s].iter().map(|c| c.1.clone()).sum();
            sum == *v
        })
    })
}

fn additivity() -> Result<(bool, String)> {
    let p = r(3, 10);
    let erdos = ErdosModel::new(p.clone())?;
    let multi = MultinacciModel::new(2, p)?;
    let checks = [
        ("Erdős μ", additive(&erdos.mu(), 8)),
        ("μ̃*", additive(&erdos.mu_tilde_star(), 8)),
        ("multinacci μ", additive(&multi.mu(), 8)),
        ("μ*", additive(&multi.mu_star(), 8)),
    ];
    let mut mass = true;
    for k in 1..=20 {
        mass &= ErdosModel::new(r(k, 21))?.total_mass().is_one();
    }
    let ok = mass && checks.iter().all(|c| c.1);
    let parts: Vec<String> = checks.iter().map(|c| format!("{} {}", c.0, c.1)).collect();
    Ok((ok, format!("{}; mass = 1 for p = k/21, k = 1..20: {mass}", parts.join(", "))))
}

/// Slack for the floating evaluation of the bounds.
const REL: f64 = 1e-9;

fn random_params(rng: &mut ChaCha8Rng) -> Result<CfParams> {
    let alpha = if rng.gen_bool(0.1) { 1.0 } else { 10f64.powf(rng.gen_range(-1.0..1.0)) };
    let kappa = rng.gen_range(0..2);
    let mut digits = vec![rng.gen_range(0..4)];
    digits.extend((0..30).map(|_| rng.gen_range(1..7u64)));
    CfParams::new(alpha, kappa, digits)
}

#[derive(Default)]
struct CfTally {
    monotone: usize,
    strong: usize,
    bound_ii: usize,
    bound_iii: usize,
    alpha_one: usize,
    alpha_one_a0_zero: usize,
    alpha_one_instances: usize,
    recursion: usize,
    worst_rec: f64,
}

fn contfrac_tally() -> Result<CfTally> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut t = CfTally::default();
    for _ in 0..1000 {
        let prm = random_params(&mut rng)?;
        let a = prm.digits().to_vec();
        let alpha = prm.alpha();
        let rho = prm.rho();
        let k = prm.kappa() as usize;
        t.alpha_one_instances += usize::from(alpha == 1.0);
        let deltas: Vec<f64> = (1..=30).map(|n| cf_state(&prm, n).map(|s| s.delta())).collect::<Result<_>>()?;
        for n in 1..=30 {
            let d = deltas[n - 1];
            let sum: u64 = a[1..=n].iter().sum();
            if n < 30 && deltas[n] > d * (1.0 + REL) {
                t.monotone += 1;
            }
            let strong = ((n + k) % 2 == 0 && alpha > 1.0) || ((n + k) % 2 == 1 && alpha < 1.0);
            if strong && d > rho.powf(sum as f64 - 2.0 - 2.0 * a[0] as f64) * (1.0 + REL) {
                t.strong += 1;
            }
            if d > delta_bound(&prm, n) * (1.0 + REL) {
                if alpha != 1.0 {
                    t.bound_ii += 1;
                } else {
                    t.alpha_one += 1;
                    t.alpha_one_a0_zero += usize::from(a[0] == 0);
                }
            }
            if alpha != 1.0 {
                let kk = truncation_constant(rho)?;
                let full = cf_eval(&prm, n)?;
                for b in 1..a[n] {
                    let mut alt = a[..=n].to_vec();
                    alt[n] = b;
                    let other = cf_eval(&prm.with_digits(alt)?, n)?;
                    let prefix: u64 = a[1..n].iter().sum();
                    let bound = kk * rho.powf((prefix + b) as f64 - 2.0 * a[0] as f64);
                    if (full - other).abs() > bound * (1.0 + REL) + 1e-15 * full.abs() {
                        t.bound_iii += 1;
                    }
                }
            }
            let qm = q_matrix(&prm, n);
            let direct = qm[0][0] / qm[1][0];
            let rel = ((cf_eval(&prm, n)? - direct) / direct).abs();
            t.worst_rec = t.worst_rec.max(rel);
            t.recursion += usize::from(rel > 1e-13);
        }
    }
    Ok(t)
}

fn contfrac_bounds() -> Result<(bool, String)> {
    let t = contfrac_tally()?;
    let ok = t.monotone + t.strong + t.bound_ii + t.bound_iii + t.recursion == 0;
    Ok((
        ok,
        format!(
            "1000 instances, n ≤ 30: violations δ monotone {} (i) {} (ii) {} (iii) {}; recursion {} (worst rel {:.1e})",
            t.monotone, t.strong, t.bound_ii, t.bound_iii, t.recursion, t.worst_rec
        ),
    ))
}

fn contfrac_convergents() -> Result<(bool, String)> {
    let t = contfrac_tally()?;
    let ok = t.bound_ii + t.alpha_one == 0;
    Ok((
        ok,
        format!(
            "α ≠ 1 branch: {} violations; α = 1 branch: {} violations over {} instances, {} of them with a₀ = 0",
            t.bound_ii, t.alpha_one, t.alpha_one_instances, t.alpha_one_a0_zero
        ),
    ))
}

fn study(m: usize, p: f64) -> Result<GapStudy> {
    GapStudy::new(&MultinacciModel::new(m, p)?, &GapConfig::default())
}

fn gap_rate(m: usize, p: f64) -> Result<(bool, String)> {
    let nmax = if m == 2 { 14 } else { 12 };
    let rep = study(m, p)?.report(nmax, 6)?;
    let target = rep.rho.ln();
    match rep.class {
        DecayClass::Exponential { rate } if m == 2 => {
            let rel = ((rate - target) / target).abs();
            Ok((
                rel <= 0.15,
                format!("rate {rate:.4} vs log ρ = {target:.4} ({:.0}% off, R² {:.6})", 100.0 * rel, rep.log_fit.r2),
            ))
        }
        DecayClass::Exponential { rate } => Ok((true, format!("rate {rate:.4}, R² {:.6}", rep.log_fit.r2))),
        c => Ok((false, format!("class {}", c.name()))),
    }
}

fn harmonic_decay() -> Result<(bool, String)> {
    let rep = study(2, 0.5)?.report(14, 6)?;
    let ok = matches!(rep.class, DecayClass::Harmonic { .. }) && rep.harmonic_variation <= 0.25;
    Ok((
        ok,
        format!("class {}, n·g_n varies by {:.1}% over n = 6..14", rep.class.name(), 100.0 * rep.harmonic_variation),
    ))
}

fn sandwich() -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for (m, p, nmax) in [(2, 0.3, 8), (2, 0.5, 8), (3, 0.6, 6)] {
        let st = study(m, p)?;
        let gaps: Vec<f64> = (1..=nmax).map(|n| st.gap(n)).collect::<Result<_>>()?;
        let mut worst = f64::NEG_INFINITY;
        for n in 1..=nmax {
            let log_kn: f64 = gaps[..n].iter().sum();
            let s = st.sandwich(n, log_kn, 1 << 22)?;
            ok &= s.holds;
            worst = worst.max(s.worst_log_deviation - log_kn);
        }
        notes.push(format!("m={m} p={p} n ≤ {nmax} margin {:.2e}", -worst));
    }
    Ok((ok, notes.join("; ")))
}

fn erdos_witness() -> Result<(bool, String)> {
    let mu = ErdosModel::new(0.5)?.mu();
    let ns: Vec<usize> = (2..=20).collect();
    let ratios = witness_ratios(&mu, &[2], 0, &ns)?;
    let per_n: Vec<f64> = ratios.iter().zip(&ns).map(|(x, &n)| x / n as f64).collect();
    let hi = per_n.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = per_n.iter().cloned().fold(f64::INFINITY, f64::min);
    let spread = (hi - lo) / hi;
    let growth = ratios[ratios.len() - 1] / ratios[0];
    let ok = spread <= 0.2 && growth >= 5.0;
    Ok((
        ok,
        format!(
            "ratio/n in [{lo:.4}, {hi:.4}] (spread {:.1}%), ratio grows ×{growth:.1} from n=2 to 20",
            100.0 * spread
        ),
    ))
}

fn probe() -> Result<(bool, String)> {
    let ns: Vec<usize> = (4..=12).collect();
    let a = counterexample_probe(3, 0.3, &ns)?;
    let b = counterexample_probe(3, 0.7, &ns)?;
    let ok = a.verdict == ProbeVerdict::Persistent && a.floor > 0.0 && b.verdict == ProbeVerdict::Vanishing;
    Ok((
        ok,
        format!(
            "p=0.3 floor {:.4} ({:?}); p=0.7 r_4 = {:.2e} → r_12 = {:.2e} ({:?})",
            a.floor,
            a.verdict,
            b.r[0],
            b.r[b.r.len() - 1],
            b.verdict
        ),
    ))
}

fn spectrum_sanity() -> Result<(bool, String)> {
    let cfg = SpectrumConfig::default();
    let erdos_half = ErdosModel::new(0.5)?;
    let erdos = ErdosModel::new(0.3)?;
    let multi = MultinacciModel::new(2, 0.3)?;
    let cases = [
        ("μ p=1/2", erdos_half.mu(), erdos_scheme()),
        ("μ p=0.3", erdos.mu(), erdos_scheme()),
        ("μ̃* p=0.3", erdos.mu_tilde_star(), erdos_scheme()),
        ("μ* m=2 p=0.3", multi.mu_star(), multinacci_scheme(2)?),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, measure, scheme) in cases {
        let est = spectrum(&measure, &scheme, &cfg)?;
        let t1 = est.tau.at(1.0).expect("grid has 1").0;
        let t0 = est.tau.at(0.0).expect("grid has 0").0;
        let idem = est.legendre.idempotence_defect(&est.tau.qs);
        let peak = est.legendre.peak();
        let good = t1.abs() <= 0.02 && (t0 + 1.0).abs() <= 0.02 && idem <= 1e-6 && (peak - 1.0).abs() <= 0.05;
        ok &= good;
        notes.push(format!("{name}: τ(1) {t1:.1e}, τ(0) {t0:.5}, idem {idem:.1e}, peak {peak:.5}"));
    }
    Ok((ok, notes.join("; ")))
}

fn domain() -> Result<(bool, String)> {
    let a = erdos_domain_check(&parse_rational("0.3")?, Some(14))?;
    let b = erdos_domain_check(&r(1, 2), Some(14))?;
    let (abar, err) = a.alpha_bar.expect("depth given");
    let closed = (a.alpha_star - 2.502).abs() < 5e-4 && (a.bound - 1.622).abs() < 5e-4 && a.alpha_star > a.bound;
    let margin = a.alpha_star - abar >= 10.0 * err;
    let ok = closed
        && margin
        && a.verdict == DomainVerdict::Disconnected
        && b.verdict == DomainVerdict::Connected
        && !b.strict_gap;
    Ok((
        ok,
        format!(
            "p=0.3: α* {:.4} > bound {:.4}, ᾱ ≈ {abar:.4} ± {err:.1e} ({}); p=1/2: α* {:.4} = bound {:.4} ({})",
            a.alpha_star,
            a.bound,
            a.verdict.name(),
            b.alpha_star,
            b.bound,
            b.verdict.name()
        ),
    ))
}

/// Smallest distance between I-set elements, with the pair's difference.
pub fn min_gap(set: &ISet) -> Result<Option<AlgebraicNumber>> {
    let mut xs = set.elements().to_vec();
    let mut err = None;
    xs.sort_by(|a, b| {
        a.compare(b).unwrap_or_else(|e| {
            err = Some(e);
            std::cmp::Ordering::Equal
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    let mut best: Option<AlgebraicNumber> = None;
    for w in xs.windows(2) {
        let d = &w[1] - &w[0];
        best = match best {
            Some(b) if b.compare(&d)?.is_le() => Some(b),
            _ => Some(d),
        };
    }
    Ok(best)
}

/// gap ≥ bound, decided exactly against the bound as a binary rational.
pub fn gap_exceeds(gap: &AlgebraicNumber, bound: f64) -> Result<bool> {
    let b = BigRational::from_float(bound).ok_or_else(|| Error::Parse("bound is not finite".into()))?;
    let lhs = gap.scale(b.denom());
    let rhs = AlgebraicNumber::from_integer(gap.field(), b.numer().clone());
    Ok((&lhs - &rhs).sign()? >= 0)
}

fn garsia() -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for (desc, d) in [("x^2-5x-3@5.5", 6u32), ("x^3-3x^2+1@2.8", 3), ("x^2-x-1@1.6", 2)] {
        let f = NumberField::from_descriptor(desc)?;
        let set = iset_of(&f, d)?;
        let bound = f.garsia_bound(2 * d as u64)?;
        let gap = min_gap(&set)?.ok_or_else(|| Error::Dimension("I-set has one element".into()))?;
        let holds = gap_exceeds(&gap, bound)?;
        ok &= holds;
        notes.push(format!("{desc}: gap {:.4} vs {bound:.4}", gap.to_f64()));
    }
    Ok((ok, notes.join("; ")))
}
