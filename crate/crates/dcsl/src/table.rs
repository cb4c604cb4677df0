//! Deterministic tabular output.
//!
//! Every numeric result leaving the library or CLI goes through this
//! module so that reruns — on any thread count — produce byte-identical
//! files. Floats are printed as `{:.16e}` (17 significant digits, enough
//! to round-trip any `f64`), line endings are always LF, and JSON keys
//! appear in declared column order.

use crate::error::{DcslError, Result};

/// A single table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    /// A float, printed as `{:.16e}`.
    Float(f64),
    /// An integer, printed in full.
    Int(i64),
    /// A boolean, printed as `true`/`false`.
    Bool(bool),
    /// Free text (CSV-quoted / JSON-escaped as needed).
    Text(String),
    /// Missing value: empty CSV cell, JSON `null`.
    Null,
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<Option<f64>> for Value {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Value::Null, Value::Float)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

/// Formats a float with 17 significant digits, enough for exact
/// `f64` round-tripping.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// An ordered, rectangular table of [`Value`]s.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Value>>,
}

/// Output encodings supported by [`Table::render`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    /// RFC-4180-style CSV with a header row.
    Csv,
    /// A JSON array of one object per row, keys in column order.
    Json,
}

impl Table {
    /// Creates an empty table with the given column names.
    pub fn new<S: Into<String>>(columns: Vec<S>) -> Self {
        Table { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    /// Column names, in order.
    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    /// Number of data rows.
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// Appends a row; its arity must match the column count.
    pub fn push_row(&mut self, row: Vec<Value>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(DcslError::InvalidConfig(format!(
                "row with {} cells pushed into a {}-column table",
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    /// Renders the table in the requested format. The output always ends
    /// with a single LF.
    pub fn render(&self, format: TableFormat) -> String {
        match format {
            TableFormat::Csv => self.to_csv(),
            TableFormat::Json => self.to_json(),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.columns.iter().map(|c| csv_escape(c)).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> String {
        let mut out = String::from("[");
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(if i == 0 { "\n  {" } else { ",\n  {" });
            for (j, (col, cell)) in self.columns.iter().zip(row.iter()).enumerate() {
                if j > 0 {
                    out.push(',');
                }
                out.push_str(&json_escape(col));
                out.push(':');
                out.push_str(&json_cell(cell));
            }
            out.push('}');
        }
        out.push_str("\n]\n");
        out
    }
}

fn csv_escape(text: &str) -> String {
    if text.contains(',') || text.contains('"') || text.contains('\n') || text.contains('\r') {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Float(f) => format_float(*f),
        Value::Int(i) => i.to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Text(t) => csv_escape(t),
        Value::Null => String::new(),
    }
}

fn json_escape(text: &str) -> String {
    // serde_json's string encoder handles all JSON escaping rules.
    serde_json::to_string(text).expect("string serialisation is infallible")
}

fn json_cell(v: &Value) -> String {
    match v {
        // JSON has no NaN/inf tokens; represent them as null.
        Value::Float(f) if !f.is_finite() => "null".to_string(),
        Value::Float(f) => format_float(*f),
        Value::Int(i) => i.to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Text(t) => json_escape(t),
        Value::Null => "null".to_string(),
    }
}
