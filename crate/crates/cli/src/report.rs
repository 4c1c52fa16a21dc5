//! Rendering of reports as JSON, CSV or plain text.

use serde_json::{Map, Value};

use crate::Format;

pub const SCHEMA: &str = "orecomp/1";

/// A finished report: a JSON object plus an optional table for CSV output.
pub struct Report {
    pub body: Map<String, Value>,
    pub table: Option<Table>,
}

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut body = Map::new();
        body.insert("schema".into(), SCHEMA.into());
        body.insert("command".into(), command.into());
        Report { body, table: None }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.body.insert(key.into(), value.into());
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&Value::Object(self.body.clone()))
                    .expect("JSON values always serialize");
                s.push('\n');
                s
            }
            Format::Csv => match &self.table {
                Some(t) => render_csv(&t.header, &t.rows),
                None => {
                    let mut rows = Vec::new();
                    flatten("", &Value::Object(self.body.clone()), &mut rows);
                    let rows: Vec<Vec<String>> = rows.into_iter().map(|(k, v)| vec![k, v]).collect();
                    render_csv(&["key".into(), "value".into()], &rows)
                }
            },
            Format::Text => {
                let mut rows = Vec::new();
                flatten("", &Value::Object(self.body.clone()), &mut rows);
                let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                rows.iter()
                    .map(|(k, v)| format!("{k:width$}  {v}\n"))
                    .collect()
            }
        }
    }
}

/// An exact integer: a JSON number when it fits in `u64`, else a decimal string.
pub fn int(n: u128) -> Value {
    match u64::try_from(n) {
        Ok(v) => v.into(),
        Err(_) => n.to_string().into(),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "null".into(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push((prefix.to_string(), format!("[{}]", parts.join(" "))));
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', ';']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_csv(header: &[String], rows: &[Vec<String>]) -> String {
    let line = |cells: &[String]| {
        let cells: Vec<String> = cells.iter().map(|c| csv_field(c)).collect();
        format!("{}\n", cells.join(","))
    };
    let mut s = line(header);
    for r in rows {
        s.push_str(&line(r));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_separators() {
        assert_eq!(csv_field("1,2"), "\"1,2\"");
        assert_eq!(csv_field("x"), "x");
        assert_eq!(csv_field("a\"b;"), "\"a\"\"b;\"");
    }

    #[test]
    fn large_integers_stay_exact() {
        assert_eq!(int(5), Value::from(5u64));
        assert_eq!(int(u128::MAX), Value::from(u128::MAX.to_string()));
    }

    #[test]
    fn text_flattens_nested_values() {
        let mut r = Report::new("demo");
        r.set("rows", serde_json::json!({"0": 5, "1": 7}));
        r.set("sizes", serde_json::json!([0, 1, 2]));
        let text = r.render(Format::Text);
        assert!(text.contains("rows.0   5"));
        assert!(text.contains("sizes    [0 1 2]"));
    }
}
