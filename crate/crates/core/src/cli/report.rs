//! Report schema and its JSON, CSV and text renderings.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultItem {
    pub key: String,
    pub passed: bool,
    #[serde(flatten)]
    pub data: Map<String, Value>,
}

impl ResultItem {
    pub fn new(key: impl Into<String>, passed: bool) -> Self {
        ResultItem { key: key.into(), passed, data: Map::new() }
    }

    pub fn with(mut self, field: &str, value: impl Into<Value>) -> Self {
        self.data.insert(field.to_string(), value.into());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub params: Map<String, Value>,
    pub results: Vec<ResultItem>,
    pub summary: Summary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl Report {
    pub fn new(command: &str, params: Map<String, Value>, results: Vec<ResultItem>) -> Self {
        let passed = results.iter().filter(|r| r.passed).count();
        let summary = Summary { passed, failed: results.len() - passed };
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            params,
            results,
            summary,
            timestamp: None,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => emit_csv(report),
        Format::Text => emit_text(report),
    }
}

fn flatten_into(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten_into(&format!("{prefix}_{}", i + 1), v, out);
            }
        }
        Value::Object(map) => {
            for (k, v) in map {
                flatten_into(&format!("{prefix}_{k}"), v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// One row per result: `key`, the flattened data fields (matrices row-major,
/// `name_<row>_<col>`), then `passed`.
fn emit_csv(report: &Report) -> String {
    let rows: Vec<Vec<(String, String)>> = report
        .results
        .iter()
        .map(|item| {
            let mut cells = Vec::new();
            for (k, v) in &item.data {
                flatten_into(k, v, &mut cells);
            }
            cells
        })
        .collect();
    let mut columns: Vec<String> = Vec::new();
    for row in &rows {
        for (name, _) in row {
            if !columns.contains(name) {
                columns.push(name.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["key".to_string()];
    header.extend(columns.iter().cloned());
    header.push("passed".into());
    w.write_record(&header).expect("in-memory csv");
    for (item, row) in report.results.iter().zip(&rows) {
        let mut rec = vec![item.key.clone()];
        for col in &columns {
            rec.push(row.iter().find(|(n, _)| n == col).map(|(_, v)| v.clone()).unwrap_or_default());
        }
        rec.push(item.passed.to_string());
        w.write_record(&rec).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) if items.iter().all(Value::is_array) => items
            .iter()
            .map(text_value)
            .collect::<Vec<_>>()
            .join("; "),
        Value::Array(items) => {
            format!("[{}]", items.iter().map(text_value).collect::<Vec<_>>().join(", "))
        }
        other => other.to_string(),
    }
}

fn emit_text(report: &Report) -> String {
    let mut s = report.command.clone();
    for (k, v) in &report.params {
        s.push_str(&format!(" {k}={}", text_value(v)));
    }
    s.push('\n');
    for item in &report.results {
        let mark = if item.passed { "PASS" } else { "FAIL" };
        s.push_str(&format!("[{mark}] {}\n", item.key));
        for (k, v) in &item.data {
            s.push_str(&format!("    {k}: {}\n", text_value(v)));
        }
    }
    s.push_str(&format!(
        "summary: {} passed, {} failed\n",
        report.summary.passed, report.summary.failed
    ));
    s
}
