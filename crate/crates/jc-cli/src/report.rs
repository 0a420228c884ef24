//! Deterministic CSV / JSON table emission.
//!
//! CSV is RFC-4180-style: comma separated, LF line endings, mandatory
//! header row. Floats print in Rust's shortest round-trip form with a `.`
//! decimal separator; absent values print as empty fields. JSON mirrors the
//! CSV columns as a single `{meta: {...}, rows: [[...], ...]}` object with
//! the column names recorded in `meta.columns`.

use serde_json::{json, Value};
use std::io::{self, Write};

#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Empty,
}

impl Cell {
    pub fn opt_float(v: Option<f64>) -> Cell {
        match v {
            Some(x) => Cell::Float(x),
            None => Cell::Empty,
        }
    }

    pub fn opt_int(v: Option<usize>) -> Cell {
        match v {
            Some(x) => Cell::Int(x as i64),
            None => Cell::Empty,
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => {
                if v.is_finite() {
                    format!("{v}")
                } else {
                    String::new()
                }
            }
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => serde_json::Number::from_f64(*v)
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Empty => Value::Null,
        }
    }
}

#[derive(Debug)]
pub struct Report {
    pub meta: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> io::Result<()> {
        let mut meta = self.meta.clone();
        meta.as_object_mut()
            .expect("meta is an object")
            .insert("columns".into(), json!(self.columns));
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        let doc = json!({ "meta": meta, "rows": rows });
        writeln!(w, "{}", serde_json::to_string_pretty(&doc)?)
    }
}
