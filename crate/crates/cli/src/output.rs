//! Flat tables written as CSV or as a JSON array of records.

use std::fmt::Write as _;
use std::io::Write;

use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}
impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}
impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Text(v.to_string())
    }
}
impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}
impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// CSV with a header row and LF endings. Floats use the shortest
    /// representation that round-trips, switching to exponent form for very
    /// large or small magnitudes.
    pub fn write_csv(&self, w: &mut dyn Write) -> std::io::Result<()> {
        let mut line = String::with_capacity(64);
        writeln!(w, "{}", self.header.join(","))?;
        for row in &self.rows {
            line.clear();
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    line.push(',');
                }
                match cell {
                    Cell::Num(v) => write!(line, "{v:?}").unwrap(),
                    Cell::Int(v) => write!(line, "{v}").unwrap(),
                    Cell::Text(s) if s.contains([',', '"', '\n']) => {
                        write!(line, "\"{}\"", s.replace('"', "\"\"")).unwrap()
                    }
                    Cell::Text(s) => line.push_str(s),
                }
            }
            line.push('\n');
            w.write_all(line.as_bytes())?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let records = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.header
                        .iter()
                        .zip(row)
                        .map(|(k, c)| {
                            let v = match c {
                                Cell::Num(v) => serde_json::Number::from_f64(*v)
                                    .map_or(Value::Null, Value::Number),
                                Cell::Int(v) => Value::from(*v),
                                Cell::Text(s) => Value::from(s.clone()),
                            };
                            (k.to_string(), v)
                        })
                        .collect();
                Value::Object(obj)
            })
            .collect();
        Value::Array(records)
    }
}
