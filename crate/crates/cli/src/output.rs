use serde_json::{json, Value};
use std::io::Write;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

pub struct Report {
    pub command: &'static str,
    pub config: Value,
    pub results: Value,
    pub table: Table,
}

pub fn render(report: &Report, format: Format, seed: u64, runtime_ms: u128) -> Result<Vec<u8>, String> {
    match format {
        Format::Json => {
            let doc = json!({
                "command": report.command,
                "config": report.config,
                "results": report.results,
                "provenance": {
                    "version": env!("CARGO_PKG_VERSION"),
                    "seed": seed,
                    "runtime_ms": runtime_ms as u64,
                },
            });
            let mut bytes = serde_json::to_vec_pretty(&doc).map_err(|e| e.to_string())?;
            bytes.push(b'\n');
            Ok(bytes)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&report.table.header).map_err(|e| e.to_string())?;
            for row in &report.table.rows {
                w.write_record(row).map_err(|e| e.to_string())?;
            }
            w.into_inner().map_err(|e| e.to_string())
        }
    }
}

pub fn emit(bytes: &[u8], out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, bytes).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => std::io::stdout().write_all(bytes).map_err(|e| e.to_string()),
    }
}

/// JSON number, or `null` when not finite.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}
