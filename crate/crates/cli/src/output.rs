//! Tables and their JSON/CSV renderings. Floats always print with 17
//! significant digits and a lowercase exponent so output is byte-stable.

use std::io::Write;

use anyhow::Result;
use serde::ser::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::args::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
    /// Non-finite or missing value.
    Null,
}

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        if x.is_finite() {
            Cell::Float(x)
        } else {
            Cell::Null
        }
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Null, Cell::from)
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
    fn csv_field(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format_float(*x),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => String::new(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cell::Int(i) => s.serialize_i64(*i),
            Cell::Float(x) => {
                let raw = RawValue::from_string(format_float(*x)).map_err(serde::ser::Error::custom)?;
                raw.serialize(s)
            }
            Cell::Text(t) => s.serialize_str(t),
            Cell::Bool(b) => s.serialize_bool(*b),
            Cell::Null => s.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SuiteSummary {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub notes: Vec<String>,
}

/// One emitted artifact.
#[derive(Debug, Clone)]
pub struct Document {
    pub command: String,
    pub model: Option<String>,
    pub parameters: Vec<(String, Cell)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub passed: Option<bool>,
    pub suites: Option<Vec<SuiteSummary>>,
}

impl Document {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            command: command.to_string(),
            model: None,
            parameters: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            passed: None,
            suites: None,
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, format: Format, out: W) -> Result<()> {
        match format {
            Format::Json => self.write_json(out),
            Format::Csv => self.write_csv(out),
        }
    }

    fn write_json<W: Write>(&self, mut out: W) -> Result<()> {
        let mut doc = serde_json::to_string_pretty(&JsonView(self))?;
        doc.push('\n');
        out.write_all(doc.as_bytes())?;
        Ok(())
    }

    fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_field))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// JSON layout with the parameters as an object in insertion order.
struct JsonView<'a>(&'a Document);

impl Serialize for JsonView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let d = self.0;
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("command", &d.command)?;
        if let Some(model) = &d.model {
            m.serialize_entry("model", model)?;
        }
        m.serialize_entry("parameters", &Ordered(&d.parameters))?;
        if let Some(passed) = d.passed {
            m.serialize_entry("passed", &passed)?;
        }
        if let Some(suites) = &d.suites {
            m.serialize_entry("suites", suites)?;
        }
        m.serialize_entry("columns", &d.columns)?;
        m.serialize_entry("rows", &d.rows)?;
        m.end()
    }
}

struct Ordered<'a>(&'a [(String, Cell)]);

impl Serialize for Ordered<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}
