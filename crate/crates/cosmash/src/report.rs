//! Machine-readable verification reports.
//!
//! A report is a versioned JSON document; the text format renders the same
//! structure line by line, so both carry identical semantic content.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub report_version: u32,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub timing_ms: u64,
}

impl Report {
    pub fn new(command: &str, inputs: Value, results: Value, timing_ms: u64) -> Report {
        Report {
            report_version: REPORT_VERSION,
            command: command.to_string(),
            inputs,
            results,
            timing_ms,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serialization");
        out.push('\n');
        out
    }

    /// Deterministic line rendering of the same content as the JSON form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("report_version: {}\n", self.report_version));
        out.push_str(&format!("command: {}\n", self.command));
        render_value("input", &self.inputs, &mut out);
        render_value("result", &self.results, &mut out);
        out.push_str(&format!("timing_ms: {}\n", self.timing_ms));
        out
    }
}

fn render_value(prefix: &str, value: &Value, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                let label = format!("{prefix} {key}");
                match v {
                    Value::Object(_) => render_value(&label, v, out),
                    other => out.push_str(&format!("{label}: {}\n", render_inline(other))),
                }
            }
        }
        other => out.push_str(&format!("{prefix}: {}\n", render_inline(other))),
    }
}

fn render_inline(value: &Value) -> String {
    match value {
        Value::Null => "none".to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let rendered: Vec<String> = items.iter().map(render_inline).collect();
            format!("[{}]", rendered.join(", "))
        }
        Value::Object(map) => {
            let rendered: Vec<String> = map
                .iter()
                .map(|(k, v)| format!("{k}: {}", render_inline(v)))
                .collect();
            format!("{{{}}}", rendered.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_renders_every_semantic_field() {
        let report = Report::new(
            "sh-check",
            json!({"algebra": "M8"}),
            json!({"violations": [{"k": ["1", "-1"], "witnesses": ["-1"]}], "count": 1}),
            7,
        );
        let text = report.to_text();
        assert!(text.contains("command: sh-check"));
        assert!(text.contains("input algebra: M8"));
        assert!(text.contains("result count: 1"));
        assert!(text.contains("witnesses: [-1]"));
    }

    #[test]
    fn json_roundtrip_preserves_content() {
        let report = Report::new("info", json!({"algebra": "S3"}), json!({"order": 6}), 3);
        let parsed: Report = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(parsed.to_text(), report.to_text());
    }
}
