//! Reports and their three renderings.
//!
//! A report is a list of scalar fields plus zero or more tables. Text prints
//! `key: value` lines and aligned tables; CSV prints the first table (or the
//! fields as a single row when there is none); JSON prints one object whose
//! values are all strings, so numbers keep their fixed 12-digit spelling.

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub struct Table {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &'static str, columns: &[&'static str]) -> Self {
        Table {
            name,
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Default)]
pub struct Report {
    pub fields: Vec<(&'static str, String)>,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn field(&mut self, key: &'static str, value: impl ToString) {
        self.fields.push((key, value.to_string()));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Json => self.json(),
            Format::Csv => self.csv(),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.fields {
            if value.contains('\n') {
                out.push_str(&format!("{key}:\n"));
                for line in value.lines() {
                    out.push_str(&format!("  {line}\n"));
                }
            } else {
                out.push_str(&format!("{key}: {value}\n"));
            }
        }
        for table in &self.tables {
            out.push('\n');
            let widths: Vec<usize> = (0..table.columns.len())
                .map(|j| {
                    table
                        .rows
                        .iter()
                        .map(|r| r[j].chars().count())
                        .chain([table.columns[j].chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                    .collect();
                format!("{}\n", padded.join("  ").trim_end())
            };
            out.push_str(&line(table.columns.clone()));
            for row in &table.rows {
                out.push_str(&line(row.iter().map(String::as_str).collect()));
            }
        }
        out
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let written = match self.tables.first() {
            Some(t) => {
                w.write_record(&t.columns)
                    .and_then(|_| t.rows.iter().try_for_each(|r| w.write_record(r)))
            }
            None => w
                .write_record(self.fields.iter().map(|f| f.0))
                .and_then(|_| w.write_record(self.fields.iter().map(|f| &f.1))),
        };
        written.expect("writing CSV to memory cannot fail");
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
    }

    fn json(&self) -> String {
        let mut obj = Map::new();
        for (key, value) in &self.fields {
            obj.insert((*key).into(), Value::String(value.clone()));
        }
        for table in &self.tables {
            let rows = table
                .rows
                .iter()
                .map(|r| {
                    let row: Map<String, Value> = table
                        .columns
                        .iter()
                        .zip(r)
                        .map(|(c, v)| ((*c).to_string(), Value::String(v.clone())))
                        .collect();
                    Value::Object(row)
                })
                .collect();
            obj.insert(table.name.into(), Value::Array(rows));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("JSON of strings");
        s.push('\n');
        s
    }
}

/// `%.12g`: 12 significant digits, trailing zeros dropped, exponent form
/// outside `1e-5 ≤ |x| < 1e12`.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
