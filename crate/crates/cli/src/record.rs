//! Flat output records and their CSV / JSON encodings.
//!
//! Floats are written in Rust's shortest round-trip form, so a parsed value
//! is bit-identical to the library result it came from.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Num(v)
    }
}

impl From<Option<f64>> for Value {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Value::Empty, Value::Num)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as u64)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_owned())
    }
}

impl Value {
    fn csv_field(&self) -> String {
        match self {
            Value::Num(v) if v.is_finite() => format!("{v:?}"),
            Value::Num(v) => format!("{v}"),
            Value::Int(v) => v.to_string(),
            Value::Bool(v) => v.to_string(),
            Value::Text(s) if s.contains([',', '"', '\n']) => {
                format!("\"{}\"", s.replace('"', "\"\""))
            }
            Value::Text(s) => s.clone(),
            Value::Empty => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Value::Num(v) => {
                serde_json::Number::from_f64(*v).map_or(serde_json::Value::Null, Into::into)
            }
            Value::Int(v) => (*v).into(),
            Value::Bool(v) => (*v).into(),
            Value::Text(s) => s.clone().into(),
            Value::Empty => serde_json::Value::Null,
        }
    }
}

/// One output row: ordered `(column, value)` pairs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(pub Vec<(&'static str, Value)>);

impl Record {
    pub fn new() -> Self {
        Record(Vec::new())
    }

    pub fn push(&mut self, key: &'static str, value: impl Into<Value>) -> &mut Self {
        self.0.push((key, value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }
}

/// Rows sharing one header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Record>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn single(record: Record) -> Self {
        Table {
            columns: record.0.iter().map(|(k, _)| *k).collect(),
            rows: vec![record],
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    fn cell(&self, row: &Record, column: &str) -> Value {
        row.get(column).cloned().unwrap_or(Value::Empty)
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = self
                .columns
                .iter()
                .map(|c| self.cell(row, c).csv_field())
                .collect();
            let _ = writeln!(out, "{}", fields.join(","));
        }
        out
    }

    /// A single object for one-row tables, an array of objects otherwise.
    pub fn to_json(&self) -> String {
        let objects: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let map: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .map(|c| ((*c).to_owned(), self.cell(row, c).json()))
                    .collect();
                serde_json::Value::Object(map)
            })
            .collect();
        let doc = match <[serde_json::Value; 1]>::try_from(objects) {
            Ok([one]) => one,
            Err(many) => serde_json::Value::Array(many),
        };
        let mut s = serde_json::to_string_pretty(&doc).unwrap_or_default();
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1e-300, 2.0f64.sqrt(), 123456789.123, -0.0] {
            let field = Value::Num(v).csv_field();
            assert_eq!(
                field.parse::<f64>().unwrap().to_bits(),
                v.to_bits(),
                "{field}"
            );
        }
    }

    #[test]
    fn absent_values_are_empty_fields() {
        let mut t = Table::new(&["a", "b", "c"]);
        let mut r = Record::new();
        r.push("a", 1.0).push("c", "x,y");
        t.rows.push(r);
        assert_eq!(t.to_csv(), "a,b,c\n1.0,,\"x,y\"\n");
        assert!(t.to_json().contains("\"b\": null"));
    }

    #[test]
    fn json_keeps_column_order() {
        let mut r = Record::new();
        r.push("z", 1u64).push("a", true);
        let s = Table::single(r).to_json();
        assert!(s.find("\"z\"").unwrap() < s.find("\"a\"").unwrap());
    }
}
