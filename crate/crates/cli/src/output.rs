//! Report rendering: the full document as JSON, or its table as flat CSV.

use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

use crate::Format;

pub struct Report {
    /// Everything the command computed.
    pub document: Value,
    /// One JSON object per CSV row.
    pub rows: Vec<Value>,
    pub passed: bool,
}

impl Report {
    pub fn table(document: Value, rows: Value, passed: bool) -> Self {
        let rows = match rows {
            Value::Array(rows) => rows,
            other => vec![other],
        };
        Report {
            document,
            rows,
            passed,
        }
    }

    pub fn single(document: Value, passed: bool) -> Self {
        Report {
            rows: vec![document.clone()],
            document,
            passed,
        }
    }
}

/// Nested objects become dotted column names; arrays stay as compact JSON.
fn flatten(prefix: &str, value: &Value, out: &mut Map<String, Value>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, out);
            }
        }
        other => {
            out.insert(prefix.to_string(), other.clone());
        }
    }
}

fn cell(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn to_csv(rows: &[Value]) -> Result<String, csv::Error> {
    let flat: Vec<Map<String, Value>> = rows
        .iter()
        .map(|r| {
            let mut m = Map::new();
            flatten("", r, &mut m);
            m
        })
        .collect();
    let mut header: Vec<String> = Vec::new();
    for row in &flat {
        for key in row.keys() {
            if !header.contains(key) {
                header.push(key.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header)?;
    for row in &flat {
        w.write_record(
            header
                .iter()
                .map(|h| row.get(h).map(cell).unwrap_or_default()),
        )?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn render(report: &Report, format: Format) -> Result<String, Box<dyn std::error::Error>> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&report.document)? + "\n",
        Format::Csv => to_csv(&report.rows)?,
    })
}

pub fn emit(
    report: &Report,
    format: Format,
    out: Option<&Path>,
) -> Result<(), Box<dyn std::error::Error>> {
    let text = render(report, format)?;
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}
