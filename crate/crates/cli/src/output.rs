//! Report shapes and their CSV/JSON renderings.
//!
//! CSV numbers use `{:.16e}` (17 significant digits, '.' decimal). JSON
//! numbers are the shortest strings that parse back to the same `f64`.

use serde_json::{Map, Value};
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) if x.is_nan() => "nan".into(),
            Cell::Num(x) if x.is_infinite() => if *x > 0.0 { "inf" } else { "-inf" }.into(),
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => quote(s),
        }
    }

    fn json(&self) -> Value {
        match self {
            // serde_json maps non-finite floats to null
            Cell::Num(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Int(n) => Value::from(*n),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Rows under fixed column names.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Ordered `(quantity, value)` pairs.
pub type Record = Vec<(String, Cell)>;

#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    Table(Table),
    Record(Record),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub fn render(report: &Report, format: Format) -> String {
    match (report, format) {
        (Report::Table(t), Format::Csv) => {
            let mut out = t.columns.join(",");
            out.push('\n');
            for row in &t.rows {
                let line: Vec<String> = row.iter().map(Cell::csv).collect();
                writeln!(out, "{}", line.join(",")).unwrap();
            }
            out
        }
        (Report::Record(r), Format::Csv) => {
            let mut out = String::from("quantity,value\n");
            for (k, v) in r {
                writeln!(out, "{},{}", quote(k), v.csv()).unwrap();
            }
            out
        }
        (Report::Table(t), Format::Json) => {
            let rows: Vec<Value> = t
                .rows
                .iter()
                .map(|row| Value::Object(t.columns.iter().zip(row).map(|(k, v)| (k.to_string(), v.json())).collect()))
                .collect();
            finish_json(Value::Array(rows))
        }
        (Report::Record(r), Format::Json) => {
            let map: Map<String, Value> = r.iter().map(|(k, v)| (k.clone(), v.json())).collect();
            finish_json(Value::Object(map))
        }
    }
}

fn finish_json(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("plain values serialize");
    s.push('\n');
    s
}
