use std::process::{Command, Output};

use serde_json::Value;

fn pvconv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pvconv")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = pvconv(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stderr_line(out: &Output) -> String {
    let s = String::from_utf8(out.stderr.clone()).unwrap();
    assert_eq!(s.lines().count(), 1, "{s}");
    assert!(s.starts_with("error: "), "{s}");
    s
}

#[test]
fn iset_json_has_three_elements() {
    let v = json(&["iset", "--field", "x^2-5x-3@5.5", "--d", "6", "--json", "-"]);
    assert_eq!(v["size"], 3);
    assert_eq!(v["elements"].as_array().unwrap().len(), 3);
    assert_eq!(v["config"]["subcommand"], "iset");
    assert_eq!(v["config"]["options"]["d"], 6);
}

#[test]
fn iset_dot_has_three_nodes() {
    let out = pvconv(&["iset", "--field", "x^2-5x-3@5.5", "--d", "6", "--dot", "-"]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count(), 3);
}

#[test]
fn measure_is_exact() {
    let v = json(&["measure", "--model", "erdos", "--p", "0.5", "--word", "200000000", "--exact"]);
    assert_eq!(v["value"], "3/65536");
    assert_eq!(v["config"]["mode"], "exact");
    let d = json(&["measure", "--model", "erdos", "--p", "0.5", "--word", "200000000"]);
    assert_eq!(d["config"]["mode"], "double");
    assert_eq!(d["value"].as_f64().unwrap(), 3.0 / 65536.0);
}

#[test]
fn matrices_emit_exact_rationals() {
    let probs = "1/6,1/6,1/6,1/6,1/6,1/6";
    let v = json(&["matrices", "--field", "x^2-5x-3@5.5", "--d", "6", "--probs", probs, "--json"]);
    let mats = v["matrices"].as_array().unwrap();
    assert_eq!(mats.len(), 6);
    let cells: Vec<&str> = mats
        .iter()
        .flat_map(|m| m["rows"].as_array().unwrap())
        .flat_map(|r| r.as_array().unwrap())
        .map(|c| c.as_str().unwrap())
        .collect();
    assert!(cells.iter().all(|c| *c == "0" || *c == "1/6"), "{cells:?}");
}

#[test]
fn spectrum_csv_header() {
    let out = pvconv(&[
        "spectrum", "--model", "erdos", "--p", "0.5", "--depth", "8", "--qmin", "-2", "--qmax", "2", "--csv", "-",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("q,tau,err\n"));
    assert_eq!(text.lines().count(), 18);
    assert!(!text.contains('\r'));
}

#[test]
fn outputs_are_byte_deterministic() {
    let args = ["spectrum", "--model", "multinacci", "--m", "2", "--which", "mu-star", "--p", "0.3", "--depth", "10"];
    let a = pvconv(&args);
    let mut more = vec!["--jobs", "1"];
    more.extend(args);
    let b = pvconv(&more);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let g = ["gibbs", "--m", "2", "--p", "0.3", "--nmax", "10"];
    assert_eq!(pvconv(&g).stdout, pvconv(&g).stdout);
}

#[test]
fn domain_verdicts() {
    let v = json(&["domain", "--p", "0.3", "--depth", "12"]);
    assert_eq!(v["verdict"], "disconnected");
    assert_eq!(v["p"], "3/10");
    let h = json(&["domain", "--p", "1/2", "--skip-spectrum"]);
    assert_eq!(h["strict_gap"], false);
    assert!(h["alpha_bar"].is_null());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["bogus"],
        vec!["iset", "--field", "x^2-5x-3", "--d", "6"],
        vec!["measure", "--word", "2x0"],
        vec!["measure", "--model", "erdos", "--which", "mu-star", "--word", "0"],
        vec!["accept", "--suite", "secondary"],
        vec!["net"],
    ] {
        let out = pvconv(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        stderr_line(&out);
    }
}

#[test]
fn computation_errors_exit_one() {
    for args in [
        vec!["measure", "--p", "3/2", "--word", "0"],
        vec!["measure", "--p", "1/2", "--word", "5"],
        vec!["net", "--multinacci", "3", "--depth", "12"],
        vec!["cf", "--alpha", "0.5", "--digits", "1,0,2"],
    ] {
        let out = pvconv(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        stderr_line(&out);
    }
}

#[test]
fn accept_subset() {
    let out = pvconv(&["accept", "--only", "3,12"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().starts_with("PASS 3"));
    assert!(text.contains("2 of 2 passed"));
}
