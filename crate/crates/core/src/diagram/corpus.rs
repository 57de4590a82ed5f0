use super::trace::RewriteTrace;
use super::DiagramError;

/// File name and contents of every bundled trace.
pub const BUNDLED: &[(&str, &str)] = &[
    ("clopen-a-implies-c-triangle.json", include_str!("../../data/traces/clopen-a-implies-c-triangle.json")),
    ("clopen-b-implies-a-splitting.json", include_str!("../../data/traces/clopen-b-implies-a-splitting.json")),
    ("clopen-b-implies-a-stability.json", include_str!("../../data/traces/clopen-b-implies-a-stability.json")),
    ("clopen-c-implies-b-open.json", include_str!("../../data/traces/clopen-c-implies-b-open.json")),
    ("clopen-trivial-braiding.json", include_str!("../../data/traces/clopen-trivial-braiding.json")),
    ("clopen-uniqueness.json", include_str!("../../data/traces/clopen-uniqueness.json")),
    ("smashing-localization-faithful.json", include_str!("../../data/traces/smashing-localization-faithful.json")),
    (
        "smashing-localization-unit-commutes.json",
        include_str!("../../data/traces/smashing-localization-unit-commutes.json"),
    ),
    (
        "symmetric-dual-implies-euler-twist.json",
        include_str!("../../data/traces/symmetric-dual-implies-euler-twist.json"),
    ),
    ("twist-id-st-implies-st.json", include_str!("../../data/traces/twist-id-st-implies-st.json")),
    ("twist-id-st-implies-st-id.json", include_str!("../../data/traces/twist-id-st-implies-st-id.json")),
    ("twist-id-ts-implies-ts.json", include_str!("../../data/traces/twist-id-ts-implies-ts.json")),
    ("twist-id-ts-implies-ts-id.json", include_str!("../../data/traces/twist-id-ts-implies-ts-id.json")),
    ("twist-st-id-implies-id-st.json", include_str!("../../data/traces/twist-st-id-implies-id-st.json")),
    ("twist-st-implies-id-st.json", include_str!("../../data/traces/twist-st-implies-id-st.json")),
    ("twist-st-implies-ts.json", include_str!("../../data/traces/twist-st-implies-ts.json")),
    ("twist-ts-id-implies-id-ts.json", include_str!("../../data/traces/twist-ts-id-implies-id-ts.json")),
    ("twist-ts-implies-id-ts.json", include_str!("../../data/traces/twist-ts-implies-id-ts.json")),
    ("twist-ts-implies-st.json", include_str!("../../data/traces/twist-ts-implies-st.json")),
    (
        "twisted-trivial-implies-symmetric.json",
        include_str!("../../data/traces/twisted-trivial-implies-symmetric.json"),
    ),
    ("untwist-splitting.json", include_str!("../../data/traces/untwist-splitting.json")),
    ("untwist-stability.json", include_str!("../../data/traces/untwist-stability.json")),
];

pub fn bundled() -> Result<Vec<RewriteTrace>, DiagramError> {
    BUNDLED
        .iter()
        .map(|(name, text)| {
            let v: serde_json::Value =
                serde_json::from_str(text).map_err(|e| DiagramError::Parse(format!("{name}: {e}")))?;
            RewriteTrace::from_json(&v)
        })
        .collect()
}

pub fn bundled_trace(name: &str) -> Result<RewriteTrace, DiagramError> {
    bundled()?
        .into_iter()
        .find(|t| t.name == name)
        .ok_or_else(|| DiagramError::Parse(format!("no bundled trace named {name}")))
}
