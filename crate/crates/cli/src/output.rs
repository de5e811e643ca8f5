use std::fs;
use std::io::{self, Write};

use pvconv_core::multifractal::fmt_g;
use serde_json::{Map, Number, Value};

/// A float in %.12g form; non-finite values become strings.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(fmt_g(x).parse::<Number>().expect("fmt_g emits JSON numbers"))
    } else {
        Value::String(fmt_g(x))
    }
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

pub fn obj(pairs: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Writes to a file, or to stdout for "-".
pub fn write_to(path: &str, text: &str) -> io::Result<()> {
    if path == "-" {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes())?;
        out.flush()
    } else {
        fs::write(path, text)
    }
}
