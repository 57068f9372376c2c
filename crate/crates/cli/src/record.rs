//! Flat output records and their json / csv / pretty renderings.
//!
//! Numbers are rounded to 12 significant digits before rendering, and csv
//! cells use the same number text as json, so both modes carry identical
//! numeric payloads.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Number, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<u32> for Value {
    fn from(x: u32) -> Self {
        Value::Int(x as i64)
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Int(x as i64)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_string())
    }
}

impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Text(x)
    }
}

pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

impl Value {
    fn json(&self) -> Json {
        match self {
            Value::Num(x) => Number::from_f64(round12(*x)).map_or(Json::Null, Json::Number),
            Value::Int(i) => Json::Number((*i).into()),
            Value::Bool(b) => Json::Bool(*b),
            Value::Text(s) => Json::String(s.clone()),
        }
    }

    fn cell(&self) -> String {
        match self {
            Value::Text(s) => s.clone(),
            other => other.json().to_string(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(Vec<(String, Value)>);

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Value>) -> &mut Self {
        self.0.push((key.into(), value.into()));
        self
    }

    pub fn with(mut self, key: impl Into<String>, value: impl Into<Value>) -> Self {
        self.push(key, value);
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_json(&self) -> Json {
        Json::Object(
            self.0
                .iter()
                .map(|(k, v)| (k.clone(), v.json()))
                .collect::<Map<_, _>>(),
        )
    }
}

/// Writes `records` in `format`: json lines, one csv table over the union of
/// keys, or aligned text.
pub fn write(out: &mut impl Write, records: &[Record], format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                writeln!(out, "{}", r.to_json())?;
            }
        }
        Format::Csv => {
            let columns = columns(records);
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(&columns)?;
            for r in records {
                w.write_record(
                    columns
                        .iter()
                        .map(|c| r.get(c).map(Value::cell).unwrap_or_default()),
                )?;
            }
            w.flush()?;
        }
        Format::Pretty => match records {
            [single] => {
                let width = single.0.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &single.0 {
                    writeln!(out, "{k:<width$}  {}", v.cell())?;
                }
            }
            _ => {
                let columns = columns(records);
                let cells: Vec<Vec<String>> = records
                    .iter()
                    .map(|r| {
                        columns
                            .iter()
                            .map(|c| r.get(c).map(Value::cell).unwrap_or_default())
                            .collect()
                    })
                    .collect();
                let widths: Vec<usize> = columns
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        cells
                            .iter()
                            .map(|row| row[i].len())
                            .chain([c.len()])
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let line = |row: &[String]| {
                    row.iter()
                        .zip(&widths)
                        .map(|(s, w)| format!("{s:>w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                };
                writeln!(out, "{}", line(&columns))?;
                for row in &cells {
                    writeln!(out, "{}", line(row))?;
                }
            }
        },
    }
    Ok(())
}

fn columns(records: &[Record]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for r in records {
        for (k, _) in &r.0 {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    cols
}
