use proptest::prelude::*;
use pvconv_core::algebraic::{NumberField, RationalCombination};
use pvconv_core::betanet::{
    beta_expansion_of_one, check_admissible, finite_type_adapted_system, integer_adapted_system,
    multinacci_adapted_system, multinacci_words, scaled_erdos_net, AdaptedSystem,
};

#[test]
fn multinacci_systems_tile_and_keep_suffixes() {
    for m in 2..=5 {
        let s = multinacci_adapted_system(m).unwrap();
        assert_eq!(s.len(), m * (m - 1) + 1);
        s.verify_partition().unwrap();
        s.verify_suffixes().unwrap();
        assert_eq!(s.words(), &multinacci_words(m)[..]);
    }
}

#[test]
fn expansions_of_one() {
    for m in 2..=5 {
        let f = NumberField::multinacci(m);
        let e = beta_expansion_of_one(&f, 32).unwrap();
        assert_eq!(e.digits, vec![1; m]);
        assert!(e.finite_type);
        let s = finite_type_adapted_system(&f, &e).unwrap();
        s.verify_partition().unwrap();
        s.verify_suffixes().unwrap();
    }
    let f = NumberField::from_descriptor("x^3-3x^2+1@2.8").unwrap();
    // the greedy expansion of 1 does not terminate for this β
    assert!(matches!(beta_expansion_of_one(&f, 64), Err(pvconv_core::Error::NotFiniteType(_))));
}

#[test]
fn admissibility() {
    assert!(check_admissible(&[1, 1]).is_ok());
    assert!(check_admissible(&[2, 1, 1]).is_ok());
    assert!(check_admissible(&[1, 0]).is_err());
    assert!(check_admissible(&[1, 2, 1]).is_err());
    // the printed condition does not exclude ε_T > ε_1
    assert!(check_admissible(&[1, 2]).is_ok());
}

#[test]
fn integer_and_erdos_nets() {
    let f = NumberField::integer(3).unwrap();
    let s = integer_adapted_system(&f).unwrap();
    s.verify_partition().unwrap();
    let e = scaled_erdos_net();
    e.verify_partition().unwrap();
    assert_eq!(e.exponents(), vec![2, 3, 2]);
}

#[test]
fn overlapping_words_rejected() {
    let f = NumberField::golden();
    let one = RationalCombination::from_integer(&f, 1);
    assert!(AdaptedSystem::from_words(&f, vec![vec![0], vec![1]], one.clone()).is_err());
    assert!(AdaptedSystem::from_words(&f, vec![vec![0]], one).is_err());
}

fn contains(outer: &pvconv_core::betanet::BasicInterval, inner: &pvconv_core::betanet::BasicInterval) -> bool {
    outer.left.compare(&inner.left).unwrap().is_le() && inner.right().compare(&outer.right()).unwrap().is_le()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn nesting(m in 2usize..4, w in prop::collection::vec(0usize..7, 0..6), v in prop::collection::vec(0usize..7, 0..6)) {
        let s = multinacci_adapted_system(m).unwrap();
        let n = s.len();
        let w: Vec<usize> = w.into_iter().map(|c| c % n).collect();
        let v: Vec<usize> = v.into_iter().map(|c| c % n).collect();
        let mut wv = w.clone();
        wv.extend(&v);
        let (a, b, c) = (s.interval_of_word(&w), s.interval_of_word(&v), s.interval_of_word(&wv));
        prop_assert!(contains(&a, &c));
        prop_assert_eq!(c.len_exp, a.len_exp + b.len_exp);
        // |⟦wv⟧| · |base| = |⟦w⟧| · |⟦v⟧|
        prop_assert!(c.length.mul(s.base()).equals(&a.length.mul(&b.length)));
    }
}
