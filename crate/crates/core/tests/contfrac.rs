use proptest::prelude::*;
use pvconv_core::contfrac::{
    cf_eval, cf_eval_vector, cf_infinity_closed, cf_limit, cf_state, delta_n, q_matrix, CfParams, Tail,
};

fn params() -> impl Strategy<Value = CfParams> {
    (prop_oneof![0.1f64..0.95, 1.05f64..10.0], 0u8..2, 0u64..4, prop::collection::vec(1u64..7, 1..50)).prop_map(
        |(alpha, kappa, a0, rest)| {
            let mut d = vec![a0];
            d.extend(rest);
            CfParams::new(alpha, kappa, d).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn recursion_matches_products(p in params()) {
        let n = p.digits().len() - 1;
        let m = q_matrix(&p, n);
        let direct = m[0][0] / m[1][0];
        let rec = cf_eval(&p, n).unwrap();
        prop_assert!(((rec - direct) / direct).abs() <= 1e-13);
    }

    #[test]
    fn vector_termination(p in params(), x in 0.0f64..5.0, y in 0.01f64..5.0) {
        let n = p.digits().len() - 1;
        prop_assume!(n >= 1);
        let k = n - 1;
        let (u, v) = p.uv(k);
        let base = cf_eval(&p, k).unwrap();
        let d = delta_n(&p, k.max(1)).unwrap();
        let val = cf_eval_vector(&p, k, x, y).unwrap();
        if k >= 1 {
            prop_assert!((val - base).abs() <= y * v / (x * u + y * v) * d * (1.0 + 1e-9) + 1e-14 * base.abs(), "{} vs {}", (val - base).abs(), y * v / (x * u + y * v) * d);
        }
        let (un, _) = p.uv(k + 1);
        prop_assert!((cf_eval_vector(&p, k, un, 1.0).unwrap() - cf_eval(&p, k + 1).unwrap()).abs() <= 1e-12 * base.abs().max(1.0));
        prop_assert!((cf_eval_vector(&p, k, 1.0, 0.0).unwrap() - base).abs() <= 1e-15 * base.abs().max(1.0));
    }

    #[test]
    fn holder1_contraction(p in params()) {
        let n = p.digits().len() - 1;
        for k in 1..n {
            let (u, v) = p.uv(k);
            let (u1, _) = p.uv(k + 1);
            let lhs = delta_n(&p, k + 1).unwrap();
            let rhs = v / (u * u1 + v) * delta_n(&p, k).unwrap();
            prop_assert!(lhs <= rhs * (1.0 + 1e-9));
        }
    }

    #[test]
    fn interlacing(p in params()) {
        let n = p.digits().len() - 1;
        let vals: Vec<f64> = (0..=n).map(|k| cf_eval(&p, k).unwrap()).collect();
        let tol = 1e-12;
        for k in (2..=n).step_by(2) {
            prop_assert!(vals[k] >= vals[k - 2] - tol * vals[k].abs().max(1.0));
        }
        for k in (3..=n).step_by(2) {
            prop_assert!(vals[k] <= vals[k - 2] + tol * vals[k].abs().max(1.0));
        }
        if n >= 1 {
            prop_assert!(vals[0] <= vals[1] + tol * vals[1].abs().max(1.0));
        }
    }

    #[test]
    fn scaling_invariance(p in params(), s in 1e-100f64..1e100) {
        let n = p.digits().len() - 1;
        let st = cf_state(&p, n).unwrap();
        let mut scaled = st;
        scaled.p *= s;
        scaled.q *= s;
        scaled.p_prev *= s;
        scaled.q_prev *= s;
        prop_assert!((scaled.value() - st.value()).abs() <= 1e-15 * st.value().abs().max(1.0));
        prop_assert!((scaled.apply(1.5, 0.5).unwrap() - st.apply(1.5, 0.5).unwrap()).abs() <= 1e-14 * st.value().abs().max(1.0));
    }
}

#[test]
fn golden_stream_limit() {
    let p = CfParams::new(1.0, 0, vec![1]).unwrap();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let v = cf_limit(&p, &Tail::Stream(vec![1; 200]), 1e-13).unwrap();
    assert!((v - phi).abs() <= 1e-12);
    let ones = CfParams::new(1.0, 0, vec![1; 40]).unwrap();
    let st = cf_state(&ones, 39).unwrap();
    assert!((st.value() - phi).abs() <= 1.0 / (st.q * st.q_prev));
}

#[test]
fn infinity_terminations() {
    for (alpha, kappa, digits) in
        [(0.25, 0, vec![0]), (0.25, 1, vec![0]), (3.0, 0, vec![2, 1, 4]), (0.6, 1, vec![1, 3])]
    {
        let p = CfParams::new(alpha, kappa, digits).unwrap();
        let a = cf_limit(&p, &Tail::Infinity, 1e-14).unwrap();
        let b = cf_infinity_closed(&p).unwrap();
        assert!((a - b).abs() < 1e-9, "{alpha} {kappa}: {a} {b}");
    }
}

#[test]
fn rejects_bad_parameters() {
    assert!(CfParams::new(0.0, 0, vec![1]).is_err());
    assert!(CfParams::new(0.5, 2, vec![1]).is_err());
    assert!(CfParams::new(0.5, 0, vec![1, 0]).is_err());
    assert!(CfParams::new(0.5, 0, vec![]).is_err());
    let p = CfParams::new(0.5, 0, vec![1, 2]).unwrap();
    assert!(delta_n(&p, 0).is_err());
    assert!(cf_eval(&p, 5).is_err());
    assert!(cf_eval_vector(&p, 1, 0.0, 0.0).is_err());
    assert!(cf_limit(&p, &Tail::Stream(vec![1, 1]), 1e-300).is_err());
}
