use num_rational::BigRational;
use proptest::prelude::*;
use pvconv_core::algebraic::{NumberField, RationalCombination};
use pvconv_core::iset::{build_iset, Caps, DigitParams};
use pvconv_core::measures::{brute_force_enclosure, OracleConfig};
use pvconv_core::transmat::{build_matrices, fixed_vector, fixed_vector_exact, parse_probs, MatrixFamily};

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn family(desc: &str, probs: &[BigRational]) -> MatrixFamily<BigRational> {
    let f = NumberField::from_descriptor(desc).unwrap();
    let p = DigitParams::new(&f, probs.len() as u32).unwrap();
    let (set, edges) = build_iset(&f, &p, Caps::default()).unwrap();
    build_matrices(&set, &edges, &p, probs).unwrap()
}

#[test]
fn pattern_matches_edges() {
    for (desc, d) in [("x^2-5x-3@5.5", 6u32), ("x^3-3x^2+1@2.8", 3), ("x^2-x-1@1.6", 2)] {
        let f = NumberField::from_descriptor(desc).unwrap();
        let p = DigitParams::new(&f, d).unwrap();
        let (set, edges) = build_iset(&f, &p, Caps::default()).unwrap();
        let probs: Vec<BigRational> = (1..=d as i64).map(|j| r(2 * j, (d * (d + 1)) as i64)).collect();
        let fam = build_matrices(&set, &edges, &p, &probs).unwrap();
        for i in 0..p.b {
            let pat = fam.get(i as usize).pattern();
            for h in 0..set.len() {
                for k in 0..set.len() {
                    let edge = edges.iter().find(|e| e.h == h && e.i == i && e.k == k);
                    assert_eq!(pat[h][k], edge.is_some());
                    if let Some(e) = edge {
                        assert_eq!(*fam.get(i as usize).get(h, k), probs[e.j as usize]);
                    }
                }
            }
        }
    }
}

#[test]
fn fixed_vectors() {
    // adapted words {0, 10} on the golden field
    let f = NumberField::golden();
    let params = DigitParams::new(&f, 2).unwrap();
    let (set, edges) = build_iset(&f, &params, Caps::default()).unwrap();
    let probs = [r(3, 10), r(7, 10)];
    let fam = build_matrices(&set, &edges, &params, &probs).unwrap();
    let adapted = fam.compose(&[vec![0], vec![1, 0]], vec!["0".into(), "10".into()]).unwrap();
    let sum = adapted.sum();
    let ones = vec![r(1, 1); sum.rows()];
    let v = fixed_vector_exact(&sum, &ones).unwrap();
    assert_eq!(sum.mul_vec(&v), v);
    let sf = sum.to_f64();
    let vf = fixed_vector(&sf, &vec![1.0; sf.rows()]).unwrap();
    let res = sf.mul_vec(&vf).iter().zip(&vf).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    assert!(res <= 1e-12);
    // entries are μ([0, 1) + i_k) up to one common factor
    let one = RationalCombination::from_integer(&f, 1);
    let masses: Vec<f64> = set
        .elements()
        .iter()
        .map(|x| {
            let a = RationalCombination::from_element(x.clone());
            let e = brute_force_enclosure(&f, &[0.3, 0.7], &a, &a.add(&one), OracleConfig::default()).unwrap();
            (e.lo + e.hi) / 2.0
        })
        .collect();
    let scale = masses.iter().sum::<f64>() / vf.iter().sum::<f64>();
    for (m, x) in masses.iter().zip(&vf) {
        assert!((m - scale * x).abs() < 1e-6, "{masses:?} vs {vf:?}");
    }
}

#[test]
fn probability_parsing() {
    assert_eq!(parse_probs("1/6,1/6,1/6,1/6,1/6,1/6").unwrap().len(), 6);
    assert!(parse_probs("0.3,0.7").is_ok());
    assert!(parse_probs("0.3,0.8").is_err());
    assert!(parse_probs("-0.3,1.3").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn word_products_compose(w in prop::collection::vec(0usize..3, 0..8), v in prop::collection::vec(0usize..3, 0..8)) {
        let fam = family("x^3-3x^2+1@2.8", &[r(1, 6), r(1, 3), r(1, 2)]);
        let mut wv = w.clone();
        wv.extend(&v);
        prop_assert_eq!(fam.word_product(&wv), fam.word_product(&w).mul(&fam.word_product(&v)));
    }
}
