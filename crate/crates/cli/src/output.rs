use std::fmt::Write;

use serde_json::Value;

/// A command's result: a JSON report, whether its verdict held, and an
/// optional hand-made text rendering.
pub struct Outcome {
    pub report: Value,
    pub ok: bool,
    pub text: Option<String>,
}

impl Outcome {
    pub fn new(report: Value, ok: bool) -> Self {
        Self { report, ok, text: None }
    }

    pub fn with_text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed arguments: exit code 2.
    Usage(String),
    /// The computation itself failed: exit code 1.
    Domain(String),
}

pub fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `key: value` lines, one level deep; nested values print as compact JSON.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
                        let _ = writeln!(out, "{k}:");
                        for i in items {
                            let _ = writeln!(out, "  - {}", scalar(i));
                        }
                    }
                    _ => {
                        let _ = writeln!(out, "{k}: {}", scalar(x));
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{}", scalar(other));
        }
    }
    out
}
