//! Report assembly: one JSON document per job on stdout, human summary on
//! stderr. Reports are byte-identical for identical (input, options, seed);
//! wall-clock time therefore goes to stderr only.

use serde_json::{json, Map, Value};
use wittkit_core::Error;

pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub options: Value,
    pub result: Value,
    pub certificates: Value,
    pub escalations: Value,
    pub error: Option<(i32, String)>,
    /// One-line human summary for stderr.
    pub summary: String,
}

impl Report {
    pub fn ok(command: &'static str) -> Self {
        Report {
            command,
            inputs: Value::Null,
            options: Value::Null,
            result: Value::Null,
            certificates: Value::Null,
            escalations: json!([]),
            error: None,
            summary: String::new(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, |(code, _)| *code)
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("command".into(), json!(self.command));
        map.insert("inputs".into(), self.inputs.clone());
        map.insert("options".into(), self.options.clone());
        map.insert("result".into(), self.result.clone());
        map.insert("certificates".into(), self.certificates.clone());
        map.insert("escalations".into(), self.escalations.clone());
        if let Some((code, message)) = &self.error {
            map.insert("error".into(), json!({ "code": code, "message": message }));
        }
        map.insert(
            "timing".into(),
            json!({
                "wall_ms": Value::Null,
                "note": "wall-clock reported on stderr; omitted here so reports are byte-identical",
            }),
        );
        Value::Object(map)
    }

    /// Plain-text rendering: the summary line plus the result fields.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        if let Some((code, message)) = &self.error {
            out.push_str(&format!("error ({code}): {message}\n"));
        }
        render_value(&mut out, "result", &self.result);
        render_value(&mut out, "certificates", &self.certificates);
        if self.escalations.as_array().is_some_and(|a| !a.is_empty()) {
            out.push_str(&format!("escalations: {}\n", self.escalations));
        }
        out
    }
}

fn render_value(out: &mut String, prefix: &str, v: &Value) {
    match v {
        Value::Null => {}
        Value::Object(map) => {
            for (k, val) in map {
                render_value(out, &format!("{prefix}.{k}"), val);
            }
        }
        other => out.push_str(&format!("{prefix} = {other}\n")),
    }
}

/// Exit codes: 2 verification-insufficient, 3 malformed input,
/// 4 degenerate input, 1 anything else.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::FiniteDimensional | Error::Degenerate => 4,
        Error::Parse(_) => 3,
        Error::BoundExhausted
        | Error::BoundInsufficient
        | Error::IncreaseSteps { .. }
        | Error::CellBudgetExceeded => 2,
        _ => 1,
    }
}
