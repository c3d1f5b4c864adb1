use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Flat rows for the CSV form of a report.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// A command result in all three output forms. Each form is rendered
/// eagerly so the choice of format cannot change what was computed.
pub struct Report {
    json: String,
    table: Table,
    text: String,
    default_format: Format,
}

impl Report {
    pub fn new<T: Serialize>(value: &T, table: Table, text: String) -> Result<Self, CliError> {
        let json = serde_json::to_string_pretty(value).map_err(|e| CliError::Output(e.to_string()))?;
        Ok(Report {
            json,
            table,
            text,
            default_format: Format::Json,
        })
    }

    pub fn text_by_default(mut self) -> Self {
        self.default_format = Format::Text;
        self
    }

    pub fn render(&self, format: Option<Format>) -> Result<String, CliError> {
        match format.unwrap_or(self.default_format) {
            Format::Json => Ok(format!("{}\n", self.json)),
            Format::Text => Ok(format!("{}\n", self.text.trim_end())),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.table.header)
                    .map_err(|e| CliError::Output(e.to_string()))?;
                for row in &self.table.rows {
                    w.write_record(row).map_err(|e| CliError::Output(e.to_string()))?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
            }
        }
    }
}

pub fn emit(rendered: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, rendered).map_err(|e| CliError::Output(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(rendered.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Output(e.to_string()))
        }
    }
}

/// Shortest round-trip form of an `f64`, `nan`/`inf` spelled out.
pub fn float(v: f64) -> String {
    format!("{v}")
}
