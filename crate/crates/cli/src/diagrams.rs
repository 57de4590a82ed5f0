use std::fmt::Write;
use std::path::PathBuf;

use dualkit_core::diagram::{bundled, validate_trace, RewriteTrace, TraceReport};
use serde_json::json;

use crate::output::{usage, CliError, Outcome};

pub fn verify(all: bool, files: &[PathBuf]) -> Result<Outcome, CliError> {
    let mut traces = Vec::new();
    if all {
        traces.extend(bundled().map_err(usage)?);
    }
    for f in files {
        let text = std::fs::read_to_string(f).map_err(|e| usage(format!("{}: {e}", f.display())))?;
        let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", f.display())))?;
        traces.push(RewriteTrace::from_json(&v).map_err(|e| usage(format!("{}: {e}", f.display())))?);
    }
    let reports: Vec<TraceReport> = traces.iter().map(validate_trace).collect();
    let valid = reports.iter().filter(|r| r.valid).count();
    let ok = valid == reports.len();
    let width = reports.iter().map(|r| r.name.len()).max().unwrap_or(4).max(5);
    let mut text = format!("{:<width$}  steps  result\n", "trace");
    for r in &reports {
        let result = match (&r.failing_step, &r.reason) {
            (None, _) => "valid".to_string(),
            (Some(i), Some(why)) => format!("INVALID at step {i}: {why}"),
            (Some(i), None) => format!("INVALID at step {i}"),
        };
        let _ = writeln!(text, "{:<width$}  {:>5}  {result}", r.name, r.steps);
    }
    let _ = writeln!(text, "{valid}/{} traces valid", reports.len());
    Ok(Outcome::new(json!({ "traces": reports, "valid": valid, "total": reports.len() }), ok).with_text(text))
}
