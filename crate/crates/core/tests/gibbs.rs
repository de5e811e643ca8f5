use num_rational::BigRational;
use pvconv_core::gibbs::{
    counterexample_probe, erdos_uniform_phi, n_step, quasi_bernoulli, telescoping_product, witness_ratios, GapConfig,
    GapStudy, LimitPotential, ProbeVerdict,
};
use pvconv_core::measures::{ErdosModel, MultinacciModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn random_word(rng: &mut ChaCha8Rng, letters: usize, len: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(0..letters)).collect()
}

#[test]
fn telescoping_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let erdos = ErdosModel::new(r(3, 10)).unwrap().mu_tilde_star();
    let multi = MultinacciModel::new(3, r(2, 5)).unwrap().mu_star();
    for i in 0..500 {
        let (mu, letters) = if i % 2 == 0 { (&erdos, 3) } else { (&multi, 7) };
        let len = rng.gen_range(1..=10);
        let w = random_word(&mut rng, letters, len);
        let Ok(prod) = telescoping_product(mu, &w) else { continue };
        assert_eq!(prod, mu.eval(&w).unwrap(), "{w:?}");
    }
}

#[test]
fn limit_potential_matches_closed_words() {
    // P_j has rank one off {0, m}, so φ_n stops moving once such a letter appears
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (m, p) in [(2, 0.3), (2, 0.5), (3, 0.4), (4, 0.65)] {
        let model = MultinacciModel::new(m, p).unwrap();
        let star = model.mu_star();
        let pot = LimitPotential::new(m, p).unwrap();
        let study = GapStudy::new(&model, &GapConfig::default()).unwrap();
        let closers: Vec<usize> = (1..model.letters()).filter(|&j| j != m).collect();
        for _ in 0..50 {
            let len = rng.gen_range(0..20);
            let mut w: Vec<usize> = (0..len).map(|_| if rng.gen_bool(0.5) { 0 } else { m }).collect();
            w.push(closers[rng.gen_range(0..closers.len())]);
            let cf = pot.phi(&w).unwrap();
            let transfer = study.transfer().phi(&w).unwrap();
            let direct = n_step(&star, &w).unwrap();
            assert!((cf - transfer).abs() < 1e-12, "m={m} {w:?}: {cf} vs {transfer}");
            assert!((cf - direct).abs() < 1e-10, "m={m} {w:?}: {cf} vs {direct}");
        }
    }
}

#[test]
fn erdos_uniform_phi_matches_closed_words() {
    let mu = ErdosModel::new(0.5).unwrap().mu_tilde_star();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let len = rng.gen_range(0..16);
        let mut w: Vec<usize> = (0..len).map(|_| if rng.gen_bool(0.5) { 0 } else { 2 }).collect();
        w.push(1);
        let phi = erdos_uniform_phi(&w).unwrap();
        let direct = n_step(&mu, &w).unwrap();
        assert!((phi - direct).abs() < 1e-10, "{w:?}: {phi} vs {direct}");
        let swapped: Vec<usize> = w.iter().map(|&c| if c == 1 { 1 } else { 2 - c }).collect();
        assert_eq!(erdos_uniform_phi(&swapped).unwrap(), phi);
    }
    assert!(erdos_uniform_phi(&[0, 2, 0]).is_err());
    assert!(erdos_uniform_phi(&[3, 1]).is_err());
}

#[test]
fn variation_bounds_gap_and_shrinks() {
    for (m, p) in [(2, 0.3), (3, 0.5)] {
        let study = GapStudy::new(&MultinacciModel::new(m, p).unwrap(), &GapConfig::default()).unwrap();
        let mut prev = f64::INFINITY;
        for n in 1..=12 {
            let var = study.variation(n).unwrap();
            let gap = study.gap(n).unwrap();
            assert!(var + 1e-12 >= gap, "n={n}: var {var} < gap {gap}");
            assert!(var <= prev + 1e-12, "n={n}");
            prev = var;
        }
    }
}

#[test]
fn k_n_is_monotone_and_subexponential() {
    let cfg = GapConfig { max_n: 16, ..GapConfig::default() };
    let study = GapStudy::new(&MultinacciModel::new(2, 0.5).unwrap(), &cfg).unwrap();
    let rep = study.report(16, 6).unwrap();
    assert!(rep.k_n.windows(2).all(|w| w[1] >= w[0]));
    let rate = rep.k_n.last().unwrap().ln() / 16.0;
    assert!(rate < 0.5, "log K_n / n = {rate}");
}

#[test]
fn sandwich_holds_at_small_n() {
    let cfg = GapConfig { max_n: 8, ..GapConfig::default() };
    let study = GapStudy::new(&MultinacciModel::new(2, 0.3).unwrap(), &cfg).unwrap();
    let rep = study.report(8, 4).unwrap();
    for n in 1..=8 {
        let check = study.sandwich(n, rep.k_n[n - 1].ln(), 1 << 20).unwrap();
        assert!(check.holds, "{check:?}");
    }
}

#[test]
fn quasi_bernoulli_bounds_for_erdos_mu() {
    let mu = ErdosModel::new(0.5).unwrap().mu().to_f64();
    let rep = quasi_bernoulli(&mu, 8).unwrap();
    assert!(rep.min_ratio > 0.0 && rep.max_ratio.is_finite());
    assert!(rep.min_ratio <= 1.0 && rep.max_ratio >= 1.0);
    let deeper = quasi_bernoulli(&mu, 10).unwrap();
    assert!(deeper.max_ratio >= rep.max_ratio && deeper.min_ratio <= rep.min_ratio);
    assert!(quasi_bernoulli(&mu, 1).is_err());
}

#[test]
fn erdos_witness_grows() {
    let mu = ErdosModel::new(0.5).unwrap().mu().to_f64();
    let ns = [10, 20, 40, 80];
    let w = witness_ratios(&mu, &[2], 0, &ns).unwrap();
    assert!(w.windows(2).all(|p| p[1] > p[0]), "{w:?}");
    assert!(witness_ratios(&mu, &[2], 0, &[1]).is_err());
}

#[test]
fn probe_persists_in_hypothesis_regime() {
    let ns: Vec<usize> = (1..=6).map(|k| 10 * k).collect();
    let rep = counterexample_probe(3, 0.3, &ns).unwrap();
    assert!(rep.in_hypothesis);
    assert_eq!(rep.partner, 4);
    assert_eq!(rep.verdict, ProbeVerdict::Persistent, "{:?}", rep.r);
    assert!(counterexample_probe(3, 0.3, &[10]).is_err());
}
