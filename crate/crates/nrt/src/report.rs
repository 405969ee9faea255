use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::Format;

pub const SCHEMA: u64 = 1;

/// Ordered key/value report rendered as text lines or one JSON object.
#[derive(Debug, Clone)]
pub struct Report {
    entries: Map<String, Value>,
    lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut entries = Map::new();
        entries.insert("schema".into(), json!(SCHEMA));
        entries.insert("command".into(), json!(command));
        Report { entries, lines: Vec::new() }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.entries.insert(key.into(), value.into());
        self
    }

    /// A free-form line shown only in text output.
    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.lines.push(text.into());
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.get(key)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.entries).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = String::new();
                for (k, v) in &self.entries {
                    if k == "schema" {
                        continue;
                    }
                    let shown = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    let _ = writeln!(out, "{k}: {shown}");
                }
                for l in &self.lines {
                    let _ = writeln!(out, "{l}");
                }
                out
            }
        }
    }
}

/// Integers as JSON numbers when they fit, decimal strings otherwise.
pub fn big(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn bigs(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(big).collect())
}
