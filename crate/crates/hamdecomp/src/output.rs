//! Output documents: a JSON envelope per run and a plain-text table view.

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

/// Every single-document run prints one envelope. Object keys are sorted,
/// so equal inputs give byte-identical documents.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope {
    pub command: String,
    pub config: Value,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl Envelope {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelope serializes");
        s.push('\n');
        s
    }
}

/// One compact JSON line.
pub fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("value serializes");
    s.push('\n');
    s
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// `path = value` rows; arrays of scalars stay on one row.
fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            if m.is_empty() {
                rows.push((prefix.to_string(), "{}".into()));
            }
            for (k, x) in m {
                flatten(&join(k), x, rows);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = a.iter().map(scalar).collect();
            rows.push((prefix.to_string(), format!("[{}]", items.join(", "))));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&join(&i.to_string()), x, rows);
            }
        }
        other => rows.push((prefix.to_string(), scalar(other))),
    }
}

fn render_rows(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

/// Two-column table of the envelope.
pub fn render_text(env: &Envelope) -> String {
    let mut rows = vec![("command".to_string(), env.command.clone())];
    flatten("config", &env.config, &mut rows);
    flatten("result", &env.result, &mut rows);
    if let Some(d) = &env.details {
        flatten("details", d, &mut rows);
    }
    render_rows(&rows)
}

/// A column-aligned table with one row per record; columns are the
/// flattened keys of the first record.
pub fn render_table(records: &[Value]) -> String {
    let flat: Vec<Vec<(String, String)>> = records
        .iter()
        .map(|r| {
            let mut rows = Vec::new();
            flatten("", r, &mut rows);
            rows
        })
        .collect();
    let Some(first) = flat.first() else {
        return String::new();
    };
    let headers: Vec<&str> = first.iter().map(|(k, _)| k.as_str()).collect();
    let cells: Vec<Vec<String>> = flat
        .iter()
        .map(|rows| {
            let m: Map<String, Value> = rows
                .iter()
                .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                .collect();
            headers
                .iter()
                .map(|h| m.get(*h).map_or("-".into(), scalar))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = headers
        .iter()
        .enumerate()
        .map(|(i, h)| {
            cells
                .iter()
                .map(|r| r[i].chars().count())
                .chain([h.chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |row: Vec<&str>| {
        let cols: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        format!("{}\n", cols.join("  ").trim_end())
    };
    let mut out = line(headers.clone());
    for r in &cells {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}
