//! CSV and JSON writers. Numbers are printed with 17 significant digits so
//! that every f64 round-trips and repeated runs are byte-identical.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::Format;

/// One f64 in scientific notation with 17 significant digits.
pub fn number(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: &[f64]) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row.to_vec());
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|&x| number(x)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    fn to_json(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let m: Map<String, Value> = self
                    .header
                    .iter()
                    .zip(r)
                    .map(|(k, &v)| (k.clone(), serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)))
                    .collect();
                Value::Object(m)
            })
            .collect();
        Value::Array(rows)
    }
}

pub struct Output {
    path: Option<PathBuf>,
    format: Format,
}

impl Output {
    pub fn new(path: Option<PathBuf>, format: Format) -> Self {
        Output { path, format }
    }

    fn write(&self, text: &str) -> io::Result<()> {
        match &self.path {
            Some(p) => fs::write(p, text),
            None => io::stdout().lock().write_all(text.as_bytes()),
        }
    }

    /// `<out>.json` next to the main output, or stderr when writing to stdout.
    fn sidecar(&self, meta: &Value) -> io::Result<()> {
        let text = pretty(meta)?;
        match &self.path {
            Some(p) => {
                let mut s = p.clone().into_os_string();
                s.push(".json");
                fs::write(PathBuf::from(s), text)
            }
            None => io::stderr().lock().write_all(text.as_bytes()),
        }
    }

    /// A table with metadata: CSV plus sidecar, or a single JSON document.
    pub fn table(&self, t: &Table, meta: &Value) -> io::Result<()> {
        match self.format {
            Format::Csv => {
                self.write(&t.to_csv())?;
                self.sidecar(meta)
            }
            Format::Json => {
                let mut doc = meta.as_object().cloned().unwrap_or_default();
                doc.insert("rows".into(), t.to_json());
                self.write(&pretty(&Value::Object(doc))?)
            }
        }
    }

    /// A single record: JSON, or a one-row CSV of its scalar fields.
    pub fn record<T: Serialize>(&self, rec: &T) -> io::Result<()> {
        let v = serde_json::to_value(rec).map_err(io::Error::other)?;
        match self.format {
            Format::Json => self.write(&pretty(&v)?),
            Format::Csv => {
                let mut keys = Vec::new();
                let mut vals = Vec::new();
                flatten("", &v, &mut keys, &mut vals);
                self.write(&format!("{}\n{}\n", keys.join(","), vals.join(",")))
            }
        }
    }
}

fn pretty(v: &Value) -> io::Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(io::Error::other)?;
    s.push('\n');
    Ok(s)
}

/// Scalar leaves of a JSON value as dotted keys; arrays are skipped.
fn flatten(prefix: &str, v: &Value, keys: &mut Vec<String>, vals: &mut Vec<String>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, keys, vals);
            }
        }
        Value::Array(_) => {}
        Value::Number(n) => {
            keys.push(prefix.to_string());
            vals.push(match n.as_f64() {
                Some(x) if n.is_f64() => number(x),
                _ => n.to_string(),
            });
        }
        Value::Null => {
            keys.push(prefix.to_string());
            vals.push(String::new());
        }
        Value::Bool(b) => {
            keys.push(prefix.to_string());
            vals.push(b.to_string());
        }
        Value::String(s) => {
            keys.push(prefix.to_string());
            vals.push(s.clone());
        }
    }
}
