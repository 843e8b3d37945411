//! Tabular reports rendered as aligned text, CSV or JSON.

use std::io::{self, Write};
use std::str::FromStr;

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

/// Significant digits in CSV and JSON output (round-trip safe for `f64`).
pub const MACHINE_DIGITS: usize = 17;
/// Significant digits in table output.
pub const TABLE_DIGITS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v.into())
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Float)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// `x` with `digits` significant digits: positional notation for
/// exponents in `[−5, digits)`, scientific otherwise.
pub fn format_float(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    // the exponent after rounding to `digits` places
    let sci = format!("{:.*e}", digits - 1, x);
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..].parse().expect("integer exponent");
    if (-5..digits as i32).contains(&exp) {
        format!("{:.*}", (digits as i32 - 1 - exp) as usize, x)
    } else {
        sci
    }
}

impl Cell {
    fn render(&self, digits: usize) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v, digits),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) if v.is_finite() => {
                Value::Number(Number::from_str(&format_float(*v, MACHINE_DIGITS)).expect("finite float is a JSON number"))
            }
            Cell::Float(_) | Cell::Empty => Value::Null,
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
        }
    }
}

/// Command output: parameters, a table of rows and the overall verdict.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub params: Vec<(&'static str, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Report { command, params: Vec::new(), columns, rows: Vec::new(), passed: true }
    }

    pub fn param(&mut self, name: &'static str, value: impl Into<Cell>) {
        self.params.push((name, value.into()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: ReportFormat, out: &mut dyn Write) -> io::Result<()> {
        match format {
            ReportFormat::Table => self.write_table(out),
            ReportFormat::Csv => self.write_csv(out),
            ReportFormat::Json => self.write_json(out),
        }
    }

    fn write_table(&self, out: &mut dyn Write) -> io::Result<()> {
        let params: Vec<String> =
            self.params.iter().map(|(k, v)| format!("{k}={}", v.render(TABLE_DIGITS))).collect();
        writeln!(out, "{} {}", self.command, params.join(" "))?;
        let cells: Vec<Vec<String>> =
            self.rows.iter().map(|r| r.iter().map(|c| c.render(TABLE_DIGITS)).collect()).collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, h)| cells.iter().map(|r| r[i].chars().count()).chain([h.chars().count()]).max().unwrap_or(0))
            .collect();
        let line = |fields: Vec<&str>| -> String {
            fields
                .iter()
                .zip(&widths)
                .map(|(f, w)| format!("{f:>w$}", w = *w))
                .collect::<Vec<_>>()
                .join("  ")
        };
        writeln!(out, "{}", line(self.columns.clone()))?;
        writeln!(out, "{}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "))?;
        for r in &cells {
            writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
        }
        writeln!(out, "{}", if self.passed { "PASSED" } else { "FAILED" })
    }

    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r.iter().map(|c| c.render(MACHINE_DIGITS)))?;
        }
        w.flush()
    }

    pub fn to_json(&self) -> Value {
        let params: Map<String, Value> = self.params.iter().map(|(k, v)| (k.to_string(), v.to_json())).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().zip(r).map(|(k, v)| (k.to_string(), v.to_json())).collect()))
            .collect();
        let mut top = Map::new();
        top.insert("command".into(), Value::from(self.command));
        top.insert("params".into(), Value::Object(params));
        top.insert("rows".into(), Value::Array(rows));
        top.insert("passed".into(), Value::from(self.passed));
        Value::Object(top)
    }

    fn write_json(&self, out: &mut dyn Write) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
        writeln!(out)
    }
}
