use std::fmt::Display;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use pvconv_core::acceptance;
use pvconv_core::algebraic::{parse_expr, AlgebraicNumber, NumberField};
use pvconv_core::betanet::{
    beta_expansion_of_one, finite_type_adapted_system, multinacci_adapted_system, scaled_erdos_net, AdaptedSystem,
};
use pvconv_core::contfrac::{cf_eval, cf_eval_vector, cf_infinity_closed, delta_bound, delta_n, CfParams};
use pvconv_core::gibbs::{counterexample_probe, quasi_bernoulli, witness_ratios, DecayClass, GapConfig, GapStudy};
use pvconv_core::iset::{build_iset, Caps, DigitParams};
use pvconv_core::measures::{brute_force_enclosure, ErdosModel, MatrixMeasure, MultinacciModel, OracleConfig};
use pvconv_core::multifractal::{erdos_domain_check, erdos_scheme, multinacci_scheme, spectrum, SpectrumConfig};
use pvconv_core::transmat::{build_matrices, parse_probs, parse_rational, MatrixFamily, Scalar};
use serde_json::Value;

use crate::args::*;
use crate::output::{num, nums, obj, to_json, write_to};

pub enum CliError {
    /// bad flags or malformed descriptors (exit 2)
    Usage(String),
    /// the computation failed (exit 1)
    Compute(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Compute(m) => m,
        }
    }
}

impl From<pvconv_core::Error> for CliError {
    fn from(e: pvconv_core::Error) -> Self {
        use pvconv_core::Error as E;
        match e {
            E::Parse(_) | E::NotMonic => CliError::Usage(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Compute(format!("i/o: {e}"))
    }
}

type Out = Result<(), CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn run(cmd: &Command) -> Out {
    match cmd {
        Command::Iset(a) => iset(cmd, a),
        Command::Matrices(a) => matrices(cmd, a),
        Command::Net(a) => net(cmd, a),
        Command::Measure(a) => measure(cmd, a),
        Command::Oracle(a) => oracle(cmd, a),
        Command::Cf(a) => cf(cmd, a),
        Command::Gibbs(a) => gibbs(cmd, a),
        Command::Probe(a) => probe(cmd, a),
        Command::Spectrum(a) => spectrum_cmd(cmd, a),
        Command::Domain(a) => domain(cmd, a),
        Command::Accept(a) => accept(a),
    }
}

fn run_config(cmd: &Command, mode: &str) -> Value {
    let tagged = serde_json::to_value(cmd).expect("arguments serialize");
    let options = tagged.get(cmd.name()).cloned().unwrap_or(Value::Null);
    obj(vec![
        ("subcommand", Value::from(cmd.name())),
        ("options", options),
        ("mode", Value::from(mode)),
        ("version", Value::from(env!("CARGO_PKG_VERSION"))),
    ])
}

fn emit(cmd: &Command, mode: &str, path: &str, mut body: Value) -> Out {
    body.as_object_mut().expect("object body").insert("config".into(), run_config(cmd, mode));
    write_to(path, &to_json(&body))?;
    Ok(())
}

fn is_decimal(text: &str) -> bool {
    text.contains(['.', 'e', 'E'])
}

fn exact_p(text: &str) -> Result<BigRational, CliError> {
    Ok(parse_rational(text.trim())?)
}

fn double_p(text: &str) -> Result<f64, CliError> {
    let x = Scalar::to_f64(&exact_p(text)?);
    if x.is_finite() {
        Ok(x)
    } else {
        Err(usage(format!("probability '{text}' out of range")))
    }
}

fn coeffs(x: &AlgebraicNumber) -> Value {
    Value::Array(
        x.coeffs().iter().map(|c| c.to_i64().map(Value::from).unwrap_or_else(|| Value::from(c.to_string()))).collect(),
    )
}

fn iset(cmd: &Command, a: &IsetArgs) -> Out {
    let field = NumberField::from_descriptor(&a.field)?;
    let params = DigitParams::new(&field, a.d)?;
    let caps = Caps { max_iters: a.max_iters, max_size: a.max_size };
    let (set, edges) = build_iset(&field, &params, caps)?;
    if let Some(path) = &a.dot {
        write_to(path, &pvconv_core::iset::export_automaton(&set, &edges))?;
    }
    if a.dot.is_some() && a.json.is_none() {
        return Ok(());
    }
    let elements: Vec<Value> = set
        .elements()
        .iter()
        .map(|x| obj(vec![("coeffs", coeffs(x)), ("text", Value::from(x.to_string())), ("value", num(x.to_f64()))]))
        .collect();
    let mut sorted = edges.clone();
    sorted.sort();
    let edges: Vec<Value> =
        sorted.iter().map(|e| Value::from(vec![e.h as u64, e.i as u64, e.k as u64, e.j as u64])).collect();
    let body = obj(vec![
        ("field", Value::from(field.descriptor())),
        ("b", Value::from(params.b)),
        ("d", Value::from(params.d)),
        (
            "alpha_mu",
            obj(vec![("exact", Value::from(params.alpha_mu.to_string())), ("value", num(params.alpha_mu.to_f64()))]),
        ),
        ("size", Value::from(set.len())),
        ("elements", Value::Array(elements)),
        ("edges", Value::Array(edges)),
    ]);
    emit(cmd, "exact", a.json.as_deref().unwrap_or("-"), body)
}

fn family_json<T: Scalar + Display>(fam: &MatrixFamily<T>, exact: bool) -> Value {
    let cell = |x: &T| if exact { Value::from(x.to_string()) } else { num(x.to_f64()) };
    let mats: Vec<Value> = fam
        .matrices()
        .iter()
        .zip(fam.labels())
        .map(|(m, label)| {
            let rows: Vec<Value> = (0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(cell).collect())).collect();
            obj(vec![("label", Value::from(label.as_str())), ("rows", Value::Array(rows))])
        })
        .collect();
    Value::Array(mats)
}

fn matrices(cmd: &Command, a: &MatricesArgs) -> Out {
    let field = NumberField::from_descriptor(&a.field)?;
    let params = DigitParams::new(&field, a.d)?;
    let (set, edges) = build_iset(&field, &params, Caps::default())?;
    let probs = parse_probs(&a.probs)?;
    let exact = a.exact || !is_decimal(&a.probs);
    let family = if exact {
        family_json(&build_matrices(&set, &edges, &params, &probs)?, true)
    } else {
        let pf: Vec<f64> = probs.iter().map(|p| Scalar::to_f64(p)).collect();
        family_json(&build_matrices(&set, &edges, &params, &pf)?, false)
    };
    let order: Vec<Value> = set.elements().iter().map(|x| Value::from(x.to_string())).collect();
    let body =
        obj(vec![("field", Value::from(field.descriptor())), ("states", Value::Array(order)), ("matrices", family)]);
    emit(cmd, if exact { "exact" } else { "double" }, a.json.as_deref().unwrap_or("-"), body)
}

fn net_of(a: &NetArgs) -> Result<AdaptedSystem, CliError> {
    match (a.multinacci, a.erdos, &a.field) {
        (Some(m), false, None) => Ok(multinacci_adapted_system(m)?),
        (None, true, None) => Ok(scaled_erdos_net()),
        (None, false, Some(desc)) => {
            let field = NumberField::from_descriptor(desc)?;
            let exp = beta_expansion_of_one(&field, 64)?;
            Ok(finite_type_adapted_system(&field, &exp)?)
        }
        _ => Err(usage("choose one of --multinacci, --erdos, --field")),
    }
}

fn net(cmd: &Command, a: &NetArgs) -> Out {
    let sys = net_of(a)?;
    let letters = sys.len();
    let total = (letters as u64).checked_pow(a.depth).filter(|&t| t <= a.budget as u64);
    let total = total.ok_or_else(|| CliError::Compute(format!("budget exceeded: {letters}^{} words", a.depth)))?;
    let mut intervals = Vec::with_capacity(total as usize);
    for mut code in 0..total {
        let mut w = vec![0usize; a.depth as usize];
        for slot in w.iter_mut().rev() {
            *slot = (code % letters as u64) as usize;
            code /= letters as u64;
        }
        let iv = sys.interval_of_word(&w);
        let right = iv.right();
        intervals.push(obj(vec![
            ("word", Value::from(w.iter().map(|&c| c as u64).collect::<Vec<_>>())),
            ("left", obj(vec![("exact", Value::from(iv.left.to_string())), ("value", num(iv.left.to_f64()))])),
            ("right", obj(vec![("exact", Value::from(right.to_string())), ("value", num(right.to_f64()))])),
            ("length", obj(vec![("exact", Value::from(iv.length.to_string())), ("value", num(iv.length.to_f64()))])),
            ("exponent", Value::from(iv.len_exp)),
        ]));
    }
    let body = obj(vec![
        ("field", Value::from(sys.field().descriptor())),
        ("base", obj(vec![("exact", Value::from(sys.base().to_string())), ("value", num(sys.base().to_f64()))])),
        ("generators", Value::from(sys.words_as_strings())),
        ("exponents", Value::from(sys.exponents())),
        ("intervals", Value::Array(intervals)),
    ]);
    emit(cmd, "exact", a.json.as_deref().unwrap_or("-"), body)
}

fn parse_word(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = || usage(format!("malformed word '{text}'"));
    if text.contains(',') {
        text.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect()
    } else {
        text.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect()
    }
}

fn model_measure<T: Scalar>(a: &ModelArgs, p: T) -> Result<MatrixMeasure<T>, CliError> {
    match (a.model, a.which) {
        (ModelKind::Erdos, Which::Mu) => Ok(ErdosModel::new(p)?.mu()),
        (ModelKind::Erdos, Which::MuTildeStar) => Ok(ErdosModel::new(p)?.mu_tilde_star()),
        (ModelKind::Multinacci, Which::Mu) => Ok(MultinacciModel::new(a.m, p)?.mu()),
        (ModelKind::Multinacci, Which::MuStar) => Ok(MultinacciModel::new(a.m, p)?.mu_star()),
        (ModelKind::Erdos, Which::MuStar) => Err(usage("mu-star belongs to the multinacci model")),
        (ModelKind::Multinacci, Which::MuTildeStar) => Err(usage("mu-tilde-star belongs to the erdos model")),
    }
}

fn measure(cmd: &Command, a: &MeasureArgs) -> Out {
    let word = parse_word(&a.word)?;
    let exact = a.exact || !is_decimal(&a.model.p);
    let (value, decimal) = if exact {
        let v = model_measure(&a.model, exact_p(&a.model.p)?)?.eval(&word)?;
        (Value::from(v.to_string()), Scalar::to_f64(&v))
    } else {
        let v = model_measure(&a.model, double_p(&a.model.p)?)?.eval(&word)?;
        (num(v), v)
    };
    let body = obj(vec![
        ("word", Value::from(word.iter().map(|&c| c as u64).collect::<Vec<_>>())),
        ("value", value),
        ("decimal", num(decimal)),
    ]);
    emit(cmd, if exact { "exact" } else { "double" }, "-", body)
}

fn oracle(cmd: &Command, a: &OracleArgs) -> Out {
    let field: Arc<NumberField> = NumberField::from_descriptor(&a.field)?;
    let probs: Vec<f64> = parse_probs(&a.probs)?.iter().map(|p| Scalar::to_f64(p)).collect();
    let (lo, hi) = a.interval.split_once(',').ok_or_else(|| usage("--interval needs 'a,b'"))?;
    let (lo, hi) = (parse_expr(&field, lo)?, parse_expr(&field, hi)?);
    let cfg = OracleConfig { digits: a.digits, budget: a.budget };
    let e = brute_force_enclosure(&field, &probs, &lo, &hi, cfg)?;
    let body = obj(vec![
        ("interval", Value::from(vec![lo.to_string(), hi.to_string()])),
        ("lo", num(e.lo)),
        ("hi", num(e.hi)),
        ("digits_used", Value::from(e.digits_used)),
        ("nodes", Value::from(e.nodes)),
    ]);
    emit(cmd, "double", "-", body)
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    text.split(',').map(|s| s.trim().parse().map_err(|_| usage(format!("malformed {what} '{text}'")))).collect()
}

fn cf(cmd: &Command, a: &CfArgs) -> Out {
    let digits: Vec<u64> = parse_list(&a.digits, "digit list")?;
    let params = CfParams::new(a.alpha, a.kappa, digits.clone())?;
    let n = digits.len() - 1;
    let value = match &a.vector {
        Some(v) => {
            let xy: Vec<f64> = parse_list(v, "vector")?;
            if xy.len() != 2 {
                return Err(usage("--vector needs two entries"));
            }
            cf_eval_vector(&params, n, xy[0], xy[1])?
        }
        None => cf_eval(&params, n)?,
    };
    let convergents = (0..=n).map(|k| cf_eval(&params, k)).collect::<Result<Vec<_>, _>>()?;
    let deltas = (1..=n).map(|k| delta_n(&params, k)).collect::<Result<Vec<_>, _>>()?;
    let bounds: Vec<f64> = (1..=n).map(|k| delta_bound(&params, k)).collect();
    let body = obj(vec![
        ("value", num(value)),
        ("rho", num(params.rho())),
        ("convergents", nums(&convergents)),
        ("delta", nums(&deltas)),
        ("delta_bound", nums(&bounds)),
        ("infinite_tail", num(cf_infinity_closed(&params)?)),
    ]);
    emit(cmd, "double", "-", body)
}

fn gibbs(cmd: &Command, a: &GibbsArgs) -> Out {
    let p = double_p(&a.p)?;
    let body = match a.model {
        ModelKind::Multinacci => {
            let cfg = GapConfig { seed: a.seed, random_tails: a.random_tails, max_n: a.nmax, ..GapConfig::default() };
            let study = GapStudy::new(&MultinacciModel::new(a.m, p)?, &cfg)?;
            let rep = study.report(a.nmax, a.window)?;
            if a.report == Report::Text {
                let mut s = format!(
                    "class {} (R² {}, rate {})\n",
                    rep.class.name(),
                    pvconv_core::multifractal::fmt_g(rep.log_fit.r2),
                    pvconv_core::multifractal::fmt_g(rep.log_fit.slope)
                );
                for ((n, g), k) in rep.ns.iter().zip(&rep.gaps).zip(&rep.k_n) {
                    s.push_str(&format!(
                        "{n} {} {}\n",
                        pvconv_core::multifractal::fmt_g(*g),
                        pvconv_core::multifractal::fmt_g(*k)
                    ));
                }
                write_to("-", &s)?;
                return Ok(());
            }
            let class = match rep.class {
                DecayClass::Exponential { rate } => {
                    obj(vec![("name", Value::from("exponential")), ("rate", num(rate))])
                }
                DecayClass::Harmonic { k } => obj(vec![("name", Value::from("harmonic")), ("k", num(k))]),
                DecayClass::Divergent => obj(vec![("name", Value::from("divergent"))]),
            };
            obj(vec![
                ("n", Value::from(rep.ns.iter().map(|&n| n as u64).collect::<Vec<_>>())),
                ("gap", nums(&rep.gaps)),
                ("k_n", nums(&rep.k_n)),
                ("window", Value::from(vec![rep.window.0 as u64, rep.window.1 as u64])),
                ("class", class),
                ("log_fit", obj(vec![("slope", num(rep.log_fit.slope)), ("r2", num(rep.log_fit.r2))])),
                ("harmonic_variation", num(rep.harmonic_variation)),
                ("rho", num(rep.rho)),
                ("tails", Value::from(study.tails())),
            ])
        }
        ModelKind::Erdos => {
            let mu = ErdosModel::new(p)?.mu();
            let qb = quasi_bernoulli(&mu, a.nmax.min(10))?;
            let ns: Vec<usize> = (2..=a.nmax.max(2)).collect();
            let ratios = witness_ratios(&mu, &[2], 0, &ns)?;
            obj(vec![
                (
                    "quasi_bernoulli",
                    obj(vec![
                        ("max_len", Value::from(qb.max_len)),
                        ("min_ratio", num(qb.min_ratio)),
                        ("max_ratio", num(qb.max_ratio)),
                    ]),
                ),
                ("witness_n", Value::from(ns.iter().map(|&n| n as u64).collect::<Vec<_>>())),
                ("witness_ratio", nums(&ratios)),
            ])
        }
    };
    emit(cmd, "double", "-", body)
}

fn probe(cmd: &Command, a: &ProbeArgs) -> Out {
    if a.nmin < 1 || a.nmax <= a.nmin {
        return Err(usage("need 1 ≤ nmin < nmax"));
    }
    let ns: Vec<usize> = (a.nmin..=a.nmax).collect();
    let rep = counterexample_probe(a.m, double_p(&a.p)?, &ns)?;
    let body = obj(vec![
        ("partner", Value::from(rep.partner)),
        ("n", Value::from(ns.iter().map(|&n| n as u64).collect::<Vec<_>>())),
        ("r", nums(&rep.r)),
        ("floor", num(rep.floor)),
        ("verdict", Value::from(format!("{:?}", rep.verdict).to_lowercase())),
        ("in_hypothesis", Value::from(rep.in_hypothesis)),
    ]);
    emit(cmd, "double", "-", body)
}

fn spectrum_cmd(cmd: &Command, a: &SpectrumArgs) -> Out {
    let mu = model_measure(&a.model, double_p(&a.model.p)?)?;
    let scheme = match a.model.model {
        ModelKind::Erdos => erdos_scheme(),
        ModelKind::Multinacci => multinacci_scheme(a.model.m)?,
    };
    let cfg = SpectrumConfig { qmin: a.qmin, qmax: a.qmax, qstep: a.qstep, depth: a.depth, scales: a.scales };
    let est = spectrum(&mu, &scheme, &cfg)?;
    if let Some(path) = &a.csv {
        write_to(path, &est.tau.to_csv())?;
    }
    if let Some(path) = &a.csv_f {
        write_to(path, &est.legendre.to_csv())?;
    }
    if a.csv.as_deref() == Some("-") || a.csv_f.as_deref() == Some("-") {
        return Ok(());
    }
    let leg = &est.legendre;
    let kink = match est.kink {
        Some((q, jump)) => obj(vec![("q", num(q)), ("slope_change", num(jump))]),
        None => Value::Null,
    };
    let body = obj(vec![
        ("alpha_min", obj(vec![("value", num(leg.alpha_min)), ("err", num(est.alpha_min_err))])),
        ("alpha_max", obj(vec![("value", num(leg.alpha_max)), ("err", num(est.alpha_max_err))])),
        ("peak", num(leg.peak())),
        ("tau_at_0", est.tau.at(0.0).map(|t| num(t.0)).unwrap_or(Value::Null)),
        ("tau_at_1", est.tau.at(1.0).map(|t| num(t.0)).unwrap_or(Value::Null)),
        ("levels", Value::from(est.tau.levels.clone())),
        ("words", Value::from(est.tau.words.iter().map(|&w| w as u64).collect::<Vec<_>>())),
        ("kink", kink),
    ]);
    emit(cmd, "double", "-", body)
}

fn domain(cmd: &Command, a: &DomainArgs) -> Out {
    let p = exact_p(&a.p)?;
    let rep = erdos_domain_check(&p, if a.skip_spectrum { None } else { Some(a.depth) })?;
    let alpha_bar = match rep.alpha_bar {
        Some((v, e)) => obj(vec![("value", num(v)), ("err", num(e))]),
        None => Value::Null,
    };
    let body = obj(vec![
        ("p", Value::from(rep.p.to_string())),
        ("q", Value::from(rep.q.to_string())),
        ("alpha_star", num(rep.alpha_star)),
        ("bound", num(rep.bound)),
        ("strict_gap", Value::from(rep.strict_gap)),
        ("alpha_bar", alpha_bar),
        ("verdict", Value::from(rep.verdict.name())),
    ]);
    emit(cmd, "exact", "-", body)
}

fn accept(a: &AcceptArgs) -> Out {
    if a.suite != "primary" {
        return Err(usage(format!("unknown suite '{}'", a.suite)));
    }
    let ids: Vec<String> = match &a.only {
        Some(list) => list.split(',').map(|s| s.trim().to_string()).collect(),
        None => acceptance::ids().iter().map(|s| s.to_string()).collect(),
    };
    let mut failed = Vec::new();
    let mut text = String::new();
    for id in &ids {
        let o = acceptance::run_one(id).ok_or_else(|| usage(format!("unknown criterion '{id}'")))?;
        text.push_str(&o.line());
        text.push('\n');
        if !o.passed {
            failed.push(o.id);
        }
    }
    text.push_str(&format!("{} of {} passed\n", ids.len() - failed.len(), ids.len()));
    write_to("-", &text)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Compute(format!("acceptance failures: {}", failed.join(", "))))
    }
}
