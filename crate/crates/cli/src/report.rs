//! Structured run reports with a machine-readable (JSON) and a
//! human-readable (flat text) rendering of identical content.

use serde::Serialize;
use serde_json::Value;

/// Everything a run reports: the command echo, digests of the file inputs,
/// the seed when the run was randomized, and the result payload. Identical
/// (command, inputs, seed) yield byte-identical reports; timing is emitted
/// separately on stderr for that reason.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub payload: Value,
}

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Flat `key: value` rendering of the same JSON tree, keys in sorted
    /// order, nested values indented. Multi-line strings (embedded graph or
    /// labelling documents) are printed as indented blocks.
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = String::new();
        render(&value, 0, &mut out);
        out
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn push_indent(depth: usize, out: &mut String) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn render_scalar(v: &Value, depth: usize, out: &mut String) {
    match v {
        Value::String(s) if s.contains('\n') => {
            out.push('\n');
            for line in s.lines() {
                push_indent(depth + 1, out);
                out.push_str("| ");
                out.push_str(line);
                out.push('\n');
            }
        }
        Value::String(s) => {
            out.push(' ');
            out.push_str(s);
            out.push('\n');
        }
        other => {
            out.push(' ');
            out.push_str(&other.to_string());
            out.push('\n');
        }
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (key, val) in map {
                push_indent(depth, out);
                out.push_str(key);
                out.push(':');
                if is_scalar(val) {
                    render_scalar(val, depth, out);
                } else {
                    out.push('\n');
                    render(val, depth + 1, out);
                }
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                push_indent(depth, out);
                out.push_str("(none)\n");
            }
            for item in items {
                push_indent(depth, out);
                out.push('-');
                if is_scalar(item) {
                    render_scalar(item, depth, out);
                } else {
                    out.push('\n');
                    render(item, depth + 1, out);
                }
            }
        }
        scalar => {
            push_indent(depth, out);
            render_scalar(scalar, depth.saturating_sub(1), out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_rendering_is_flat_and_stable() {
        let report = Report {
            command: vec!["bounds".into(), "--op".into(), "epsilon".into()],
            inputs: vec![],
            seed: None,
            payload: json!({
                "alpha": "3/448",
                "epsilon": "1/4096",
                "nested": { "q_prime": 3 },
                "list": [1, 2],
            }),
        };
        let text = report.to_text();
        assert!(text.contains("alpha: 3/448"));
        assert!(text.contains("q_prime: 3"));
        assert_eq!(text, report.to_text());
        let json_out = report.to_json();
        assert!(json_out.ends_with('\n'));
        assert!(json_out.contains("\"epsilon\": \"1/4096\""));
    }
}
