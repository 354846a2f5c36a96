//! Reports: an ordered key-value tree rendered as indented text or JSON.

use foliation::linalg::InconsistencyCertificate;
use foliation::{Completeness, GradedSubspace, PForm, Polynomial};
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    fields: Map<String, Value>,
    /// Set when the command ran but the answer is a failure the caller
    /// should notice (obstruction, non-integrable input, mismatch).
    pub semantic_failure: bool,
}

/// A number together with its completeness tag.
pub fn claim(value: impl Into<Value>, c: Completeness) -> Value {
    json!({ "value": value.into(), "completeness": c.to_string() })
}

pub fn exact(value: impl Into<Value>) -> Value {
    claim(value, Completeness::Exact)
}

pub fn poly_text(p: &Polynomial, names: &[String]) -> Value {
    Value::String(p.display_with(names).to_string())
}

pub fn form_text(w: &PForm, names: &[String]) -> Value {
    Value::String(w.display_with(names).to_string())
}

/// Monomial labels plus the basis as dense coefficient vectors.
pub fn subspace(s: &GradedSubspace, names: &[String], c: Completeness) -> Value {
    let space = s.space();
    let n = space.dim();
    let basis: Vec<Value> = s
        .rows()
        .iter()
        .map(|row| {
            let mut dense = vec![Value::String("0".into()); n];
            for (i, q) in row {
                dense[*i] = Value::String(q.to_string());
            }
            Value::Array(dense)
        })
        .collect();
    json!({
        "dim": claim(s.dim(), c),
        "coordinates": (0..n).map(|i| space.label(i, names)).collect::<Vec<_>>(),
        "basis": basis,
    })
}

pub fn certificate(cert: &InconsistencyCertificate) -> Value {
    let verified = cert.verify().unwrap_or(false);
    let mut v = serde_json::to_value(cert).expect("certificate serializes");
    v.as_object_mut()
        .expect("struct")
        .insert("verified".into(), Value::Bool(verified));
    v
}

pub fn degree_banner(d: u32) -> Value {
    json!({
        "convention": "coefficient degree d, normal bundle O(d+1), foliation degree d-1",
        "coefficient_degree": d,
        "normal_bundle_twist": d + 1,
        "foliation_degree": i64::from(d) - 1,
    })
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            fields: Map::new(),
            semantic_failure: false,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.get(key)
    }

    pub fn fail(&mut self) -> &mut Self {
        self.semantic_failure = true;
        self
    }

    pub fn to_json(&self) -> Value {
        let mut top = Map::new();
        top.insert("schema".into(), json!(format!("foliate-report/v{SCHEMA_VERSION}")));
        top.insert("command".into(), json!(self.command));
        top.insert("status".into(), json!(if self.semantic_failure { "failure" } else { "ok" }));
        for (k, v) in &self.fields {
            top.insert(k.clone(), v.clone());
        }
        Value::Object(top)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = String::new();
                if let Value::Object(m) = self.to_json() {
                    for (k, v) in &m {
                        write_text(&mut out, k, v, 0);
                    }
                }
                out
            }
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(m) if m.len() == 2 && m.contains_key("value") && m.contains_key("completeness") => {
            let value = scalar(&m["value"])?;
            Some(format!("{value} [{}]", m["completeness"].as_str().unwrap_or("?")))
        }
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", xs.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn write_text(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                write_text(out, k, x, depth + 1);
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                write_text(out, &format!("[{i}]"), x, depth + 1);
            }
        }
        _ => unreachable!(),
    }
}
