use num_rational::BigRational;
use pvconv_core::measures::{lebesgue, ErdosModel, MultinacciModel};
use pvconv_core::multifractal::{
    erdos_domain_check, erdos_scheme, legendre, local_dimension, multinacci_scheme, spectrum, tau_estimate,
    DomainVerdict, SpectrumConfig,
};

const PHI: f64 = 1.618_033_988_749_895;

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

#[test]
fn covers_tile_the_base_interval() {
    let scheme = erdos_scheme();
    let leb = lebesgue(PHI, &scheme.exponents);
    for e in 1..=8 {
        let words = scheme.words(e).unwrap();
        let total: f64 = words.iter().map(|w| leb.eval(w).unwrap()).sum();
        assert!((total - leb.eval(&[]).unwrap()).abs() < 1e-12, "E={e}: {total}");
        let lens: f64 = words
            .iter()
            .map(|w| {
                let s: u32 = w.iter().map(|&c| scheme.exponents[c]).sum();
                scheme.log_scale(s).exp()
            })
            .sum();
        assert!((lens - PHI).abs() < 1e-12, "E={e}: {lens}");
    }
}

#[test]
fn log_values_agree_with_words() {
    let scheme = erdos_scheme();
    let mu = ErdosModel::new(0.3).unwrap().mu();
    for e in [3, 6, 9] {
        let words = scheme.words(e).unwrap();
        let mut want: Vec<f64> = words.iter().map(|w| mu.eval(w).unwrap()).filter(|&v| v > 0.0).collect();
        let mut got: Vec<f64> = scheme.log_values(&mu, e).unwrap().into_iter().map(f64::exp).collect();
        want.sort_by(f64::total_cmp);
        got.sort_by(f64::total_cmp);
        assert_eq!(want.len(), got.len());
        for (a, b) in want.iter().zip(&got) {
            assert!((a - b).abs() <= 1e-12 * a.max(1e-300), "{a} vs {b}");
        }
    }
}

#[test]
fn tau_normalization() {
    let cfg = SpectrumConfig { qmin: -4.0, qmax: 4.0, depth: 12, ..SpectrumConfig::default() };
    let erdos = ErdosModel::new(0.3).unwrap().mu();
    let multi = MultinacciModel::new(3, 0.4).unwrap();
    for (mu, scheme) in [(erdos, erdos_scheme()), (multi.mu_star(), multinacci_scheme(3).unwrap())] {
        let t = tau_estimate(&mu, &scheme, &cfg).unwrap();
        assert!(t.at(1.0).unwrap().0.abs() < 1e-9);
        assert!((t.at(0.0).unwrap().0 + 1.0).abs() < 0.01);
    }
}

#[test]
fn uniform_erdos_tau_is_stable_in_depth() {
    let mu = ErdosModel::new(0.5).unwrap().mu();
    let cfg = |depth| SpectrumConfig { qmin: 0.0, qmax: 4.0, depth, ..SpectrumConfig::default() };
    let deep = tau_estimate(&mu, &erdos_scheme(), &cfg(14)).unwrap().at(2.0).unwrap().0;
    let shallow = tau_estimate(&mu, &erdos_scheme(), &cfg(10)).unwrap().at(2.0).unwrap().0;
    assert!((deep - shallow).abs() < 0.03, "{deep} vs {shallow}");
}

#[test]
fn spectrum_shape_and_tangency() {
    let mu = ErdosModel::new(0.5).unwrap().mu();
    let est = spectrum(&mu, &erdos_scheme(), &SpectrumConfig { depth: 12, ..SpectrumConfig::default() }).unwrap();
    let leg = &est.legendre;
    assert!(leg.alpha_min < 1.0 && 1.0 < leg.alpha_max, "{} {}", leg.alpha_min, leg.alpha_max);
    assert!((leg.peak() - 1.0).abs() < 0.01);
    let a1 = leg.slope_at(1.0, 0.25);
    assert!((leg.f_at(a1) - a1).abs() <= 0.05, "f({a1}) = {}", leg.f_at(a1));
    assert!(est.alpha_max_err > 0.0 && est.alpha_max_err < 0.05);
}

#[test]
fn legendre_needs_three_points() {
    assert!(legendre(&[0.0, 1.0], &[-1.0, 0.0]).is_err());
}

#[test]
fn csv_headers() {
    let mu = ErdosModel::new(0.5).unwrap().mu();
    let cfg = SpectrumConfig { qmin: -1.0, qmax: 1.0, qstep: 0.5, depth: 8, ..SpectrumConfig::default() };
    let est = spectrum(&mu, &erdos_scheme(), &cfg).unwrap();
    let tau = est.tau.to_csv();
    assert!(tau.starts_with("q,tau,err\n"));
    assert_eq!(tau.lines().count(), 6);
    assert!(est.legendre.to_csv().starts_with("alpha,f\n"));
}

#[test]
fn local_dimension_on_the_zero_stream() {
    let stream = vec![0usize; 2000];
    for (p, want) in [(0.3, 0.3f64.ln() / -PHI.ln()), (0.5, 2f64.ln() / PHI.ln())] {
        let mu = ErdosModel::new(p).unwrap().mu();
        let est = local_dimension(&mu, &erdos_scheme(), &stream).unwrap();
        assert!((est.tail_average - want).abs() < 0.005, "p={p}: {} vs {want}", est.tail_average);
    }
}

#[test]
fn domain_check_is_symmetric() {
    let a = erdos_domain_check(&r(3, 10), None).unwrap();
    let b = erdos_domain_check(&r(7, 10), None).unwrap();
    assert_eq!(a.verdict, DomainVerdict::Disconnected);
    assert_eq!(a.verdict, b.verdict);
    assert!(a.strict_gap && b.strict_gap);
    assert!((a.alpha_star - b.alpha_star).abs() < 1e-12 && (a.bound - b.bound).abs() < 1e-12);
    let half = erdos_domain_check(&r(1, 2), None).unwrap();
    assert!(!half.strict_gap);
    assert!(erdos_domain_check(&r(3, 2), None).is_err());
}
