//! Machine-readable experiment output.
//!
//! CSV files open with a single `#`-prefixed JSON metadata line (config
//! echo, precision settings, tool version) followed by a header row; the
//! JSON format carries the same metadata, columns, and rows in one object.
//! Given a fixed config and seed the bytes are stable across runs.

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde_json::{json, Value};
use std::io::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub struct Report {
    pub command: &'static str,
    pub metadata: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    runtime: serde_json::Map<String, Value>,
}

impl Report {
    pub fn new(command: &'static str, metadata: Value, columns: Vec<&'static str>) -> Self {
        Report {
            command,
            metadata,
            columns,
            rows: Vec::new(),
            runtime: serde_json::Map::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Attach a run outcome (cumulative leak, search summary, …) as a
    /// top-level metadata entry beside the config echo.
    pub fn set_runtime(&mut self, key: &str, value: Value) {
        self.runtime.insert(key.to_string(), value);
    }

    fn full_metadata(&self) -> Value {
        let mut meta = json!({
            "tool": "gmrotor",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "precision": {"rotation_fixed_bits": 128, "float": "f64"},
            "config": self.metadata,
        });
        for (k, v) in &self.runtime {
            meta[k] = v.clone();
        }
        meta
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("# ");
        out.push_str(&self.full_metadata().to_string());
        out.push('\n');
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let doc = json!({
            "metadata": self.full_metadata(),
            "columns": self.columns,
            "rows": self.rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &str, format: Format) -> Result<()> {
        let body = match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        };
        if path == "-" {
            std::io::stdout()
                .write_all(body.as_bytes())
                .context("writing report to stdout")?;
        } else {
            std::fs::write(path, body).with_context(|| format!("writing report to `{path}`"))?;
        }
        Ok(())
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// JSON number from an f64 (null for non-finite values, which CSV renders
/// as an empty cell).
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}
