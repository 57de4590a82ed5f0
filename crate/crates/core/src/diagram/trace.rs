use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::rewrite::{Direction, Location, RewriteRule, RuleKind, RuleSet};
use super::signature::Signature;
use super::term::Diagram;
use super::DiagramError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: String,
    pub dir: Direction,
    pub slice: usize,
    pub offset: usize,
}

impl TraceStep {
    pub fn new(rule: &str, dir: Direction, slice: usize, offset: usize) -> Self {
        Self { rule: rule.into(), dir, slice, offset }
    }

    pub fn location(&self) -> Location {
        Location::new(self.slice, self.offset)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub id: String,
    pub lhs: Diagram,
    pub rhs: Diagram,
}

/// A derivation of `start = end` from the axioms and the declared hypotheses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteTrace {
    pub name: String,
    pub statement: String,
    pub signature: Signature,
    pub hypotheses: Vec<Hypothesis>,
    pub start: Diagram,
    pub steps: Vec<TraceStep>,
    pub end: Diagram,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub name: String,
    pub valid: bool,
    pub steps: usize,
    /// Index of the first step that did not apply; `steps` when only the
    /// final comparison failed.
    pub failing_step: Option<usize>,
    pub reason: Option<String>,
}

impl RewriteTrace {
    pub fn rules(&self) -> Result<RuleSet, DiagramError> {
        let mut rules = RuleSet::axioms(&self.signature)?;
        for h in &self.hypotheses {
            rules.add(RewriteRule::explicit(
                &self.signature,
                &h.id,
                RuleKind::Hypothesis,
                h.lhs.clone(),
                h.rhs.clone(),
            )?)?;
        }
        Ok(rules)
    }

    /// Every intermediate diagram, `start` first.
    pub fn replay(&self) -> Result<Vec<Diagram>, (usize, DiagramError)> {
        let rules = self.rules().map_err(|e| (0, e))?;
        let sig = &self.signature;
        let mut cur = self.start.clone().canonical(sig.flavor);
        cur.words(sig).map_err(|e| (0, e))?;
        let mut out = vec![cur.clone()];
        for (i, step) in self.steps.iter().enumerate() {
            cur = rules
                .get(&step.rule)
                .and_then(|r| r.apply(sig, &cur, step.dir, step.location()))
                .map_err(|e| (i, e))?;
            out.push(cur.clone());
        }
        Ok(out)
    }

    pub fn from_json(v: &Value) -> Result<Self, DiagramError> {
        let field = |k: &str| v.get(k).ok_or_else(|| DiagramError::Parse(format!("trace is missing {k:?}")));
        let str_field =
            |k: &str| -> Result<String, DiagramError> { Ok(field(k)?.as_str().unwrap_or_default().to_string()) };
        let signature: Signature = serde_json::from_value(field("signature")?.clone())
            .map_err(|e| DiagramError::Parse(format!("signature: {e}")))?;
        signature.validate()?;
        let mut hypotheses = Vec::new();
        for h in v.get("hypotheses").and_then(Value::as_array).into_iter().flatten() {
            let id = h.get("id").and_then(Value::as_str).ok_or_else(|| DiagramError::Parse("hypothesis id".into()))?;
            hypotheses.push(Hypothesis {
                id: id.into(),
                lhs: Diagram::from_json(&signature, h.get("lhs").unwrap_or(&Value::Null))?,
                rhs: Diagram::from_json(&signature, h.get("rhs").unwrap_or(&Value::Null))?,
            });
        }
        let steps: Vec<TraceStep> =
            serde_json::from_value(field("steps")?.clone()).map_err(|e| DiagramError::Parse(format!("steps: {e}")))?;
        Ok(Self {
            name: str_field("name")?,
            statement: v.get("statement").and_then(Value::as_str).unwrap_or_default().into(),
            start: Diagram::from_json(&signature, field("start")?)?,
            end: Diagram::from_json(&signature, field("end")?)?,
            signature,
            hypotheses,
            steps,
        })
    }

    pub fn to_json(&self) -> Result<Value, DiagramError> {
        let sig = &self.signature;
        let hyps = self
            .hypotheses
            .iter()
            .map(|h| Ok(json!({ "id": h.id, "lhs": h.lhs.to_json(sig)?, "rhs": h.rhs.to_json(sig)? })))
            .collect::<Result<Vec<_>, DiagramError>>()?;
        Ok(json!({
            "name": self.name,
            "statement": self.statement,
            "signature": sig,
            "hypotheses": hyps,
            "start": self.start.to_json(sig)?,
            "steps": self.steps,
            "end": self.end.to_json(sig)?,
        }))
    }
}

/// Replays the trace; valid iff every step applies and the result equals `end`.
pub fn validate_trace(trace: &RewriteTrace) -> TraceReport {
    let report = |failing_step, reason: Option<String>| TraceReport {
        name: trace.name.clone(),
        valid: reason.is_none(),
        steps: trace.steps.len(),
        failing_step,
        reason,
    };
    match trace.replay() {
        Err((i, e)) => report(Some(i), Some(e.to_string())),
        Ok(ds) => {
            let last = ds.last().expect("start is recorded");
            if *last == trace.end.clone().canonical(trace.signature.flavor) {
                report(None, None)
            } else {
                report(
                    Some(trace.steps.len()),
                    Some(format!("derived {} but the trace claims {}", last.show(), trace.end.show())),
                )
            }
        }
    }
}
