//! Rendering of command results as JSON, CSV or aligned text.

use serde_json::{Map, Value};

use crate::error::CurveError;

pub const SCHEMA: &str = "curveinv/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Adds the schema and command keys; non-object results are wrapped under `result`.
pub fn envelope(command: &str, body: Value) -> Value {
    let mut map = match body {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    map.insert("schema".into(), Value::String(SCHEMA.into()));
    map.insert("command".into(), Value::String(command.into()));
    Value::Object(map)
}

pub fn error_kind(e: &CurveError) -> &'static str {
    match e {
        CurveError::TruncationInsufficient(_) => "TruncationInsufficient",
        CurveError::NotASeries(_) => "NotASeries",
        CurveError::ZeroPolynomial => "ZeroPolynomial",
        CurveError::NotAtOrigin => "NotAtOrigin",
        CurveError::NonReducedInput => "NonReducedInput",
        CurveError::NonReducedParametrization(_) => "NonReducedParametrization",
        CurveError::InvalidCurve(_) => "InvalidCurve",
        CurveError::EvoluteEscapes(_) => "EvoluteEscapes",
        CurveError::HypothesisViolated(_) => "HypothesisViolated",
        CurveError::BranchMismatch { .. } => "BranchMismatch",
        CurveError::RangeError { .. } => "RangeError",
        CurveError::Parse { .. } => "Parse",
    }
}

pub fn error_body(e: &CurveError) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), Value::String(error_kind(e).into()));
    m.insert("message".into(), Value::String(e.to_string()));
    let mut outer = Map::new();
    outer.insert("error".into(), Value::Object(m));
    Value::Object(outer)
}

pub fn json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialise");
    s.push('\n');
    s
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// `key  value` lines, nested values flattened with dotted keys.
pub fn text(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{:<w$}  {}\n", k, v, w = w)).collect()
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{}.{}", prefix, k)
        }
    };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{}[{}]", prefix, i), x, out);
            }
        }
        Value::Array(a) => out.push((prefix.to_string(), a.iter().map(scalar).collect::<Vec<_>>().join(", "))),
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

pub fn csv_rows<T: serde::Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("rows serialise");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

/// Space-aligned table with a header line.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            widths[i] = widths[i].max(c.len());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let parts: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:<w$}", c, w = widths[i]))
            .collect();
        format!("{}\n", parts.join("  ").trim_end())
    };
    let mut s = line(header.to_vec());
    for r in rows {
        s.push_str(&line(r.iter().map(|c| c.as_str()).collect()));
    }
    s
}
