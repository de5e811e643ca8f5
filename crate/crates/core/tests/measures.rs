use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use pvconv_core::measures::{
    brute_force_enclosure, compare_mu_mustar, for_each_word, lebesgue, ErdosModel, MultinacciModel, OracleConfig,
};

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

#[test]
fn erdos_nine_letter_word() {
    let mu = ErdosModel::new(r(1, 2)).unwrap().mu();
    assert_eq!(mu.eval(&[2, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap(), r(3, 65536));
}

#[test]
fn projector_identity() {
    for m in 2..=5 {
        let model = MultinacciModel::new(m, r(3, 7)).unwrap();
        assert_eq!(model.projector_defect(), 0.0, "m = {m}");
    }
}

#[test]
fn unit_mass() {
    for p in [r(1, 2), r(3, 10), r(5, 9)] {
        let e = ErdosModel::new(p.clone()).unwrap();
        assert!(e.mu().eval(&[]).unwrap().is_one());
        assert!(e.mu_tilde_star().eval(&[]).unwrap().is_one());
        for m in 2..=4 {
            let model = MultinacciModel::new(m, p.clone()).unwrap();
            assert!(model.mu_star().eval(&[]).unwrap().is_one());
        }
    }
}

#[test]
fn golden_mass_of_unit_interval_two_ways() {
    // [0, 1) = ⟦⟦0⟧⟧ ∪ ⟦⟦1⟧⟧ on the Erdős net of [0, β)
    for p in [r(1, 2), r(3, 10)] {
        let erdos = ErdosModel::new(p.clone()).unwrap().mu();
        let multi = MultinacciModel::new(2, p).unwrap().mu();
        assert_eq!(multi.eval(&[]).unwrap(), BigRational::one() - erdos.eval(&[2]).unwrap());
    }
}

#[test]
fn lebesgue_is_additive() {
    let beta = (1.0 + 5f64.sqrt()) / 2.0;
    let leb = lebesgue(beta, &[2, 3, 2]);
    let mut total = 0.0;
    for_each_word(&leb, 6, &mut |_, v| total += v);
    assert!((total - leb.eval(&[]).unwrap()).abs() < 1e-12);
}

#[test]
fn oracle_on_shallow_multinacci_intervals() {
    for (m, p) in [(2, 0.3), (3, 0.45)] {
        let model = MultinacciModel::new(m, p).unwrap();
        let net = model.net().unwrap();
        let mu = model.mu();
        for n in 1..=2 {
            let mut words = Vec::new();
            for_each_word(&mu, n, &mut |w, v| words.push((w.to_vec(), *v)));
            for (w, v) in words {
                let iv = net.interval_of_word(&w);
                let cfg = OracleConfig { digits: 20, budget: 1 << 22 };
                let e = brute_force_enclosure(net.field(), &[p, 1.0 - p], &iv.left, &iv.right(), cfg).unwrap();
                assert!(e.contains(v, 1e-12), "m={m} w={w:?} v={v} {e:?}");
            }
        }
    }
}

#[test]
fn oracle_rejects_bad_input() {
    let f = pvconv_core::algebraic::NumberField::golden();
    let a = pvconv_core::algebraic::RationalCombination::from_integer(&f, 0);
    let b = pvconv_core::algebraic::RationalCombination::from_integer(&f, 1);
    assert!(brute_force_enclosure(&f, &[0.5, 0.6], &a, &b, OracleConfig::default()).is_err());
    let tiny = OracleConfig { digits: 24, budget: 10 };
    assert!(brute_force_enclosure(&f, &[0.5, 0.5], &a, &b, tiny).is_err());
}

#[test]
fn invalid_models() {
    assert!(ErdosModel::new(0.0).is_err());
    assert!(MultinacciModel::new(1, 0.5).is_err());
    assert!(MultinacciModel::new(2, 1.0).is_err());
    assert!(ErdosModel::new(0.5).unwrap().mu().eval(&[3]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mu_and_mu_star_comparable(m in 2usize..4, p in 0.2f64..0.8, w in prop::collection::vec(0usize..7, 1..10)) {
        let model = MultinacciModel::new(m, p).unwrap();
        let n = model.letters();
        let w: Vec<usize> = w.into_iter().map(|c| c % n).collect();
        prop_assume!(w.iter().any(|&c| c != 0));
        let c = compare_mu_mustar(&model, &w).unwrap();
        prop_assert!(c.holds, "{:?}", c);
    }
}
