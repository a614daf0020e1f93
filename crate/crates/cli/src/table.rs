use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Curve data: one x column followed by named value columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub x_label: String,
    pub columns: Vec<String>,
    pub rows: Vec<(f64, Vec<f64>)>,
    /// Text shown in place of the x values, when non-empty.
    pub row_names: Vec<String>,
}

impl Table {
    pub fn new(x_label: impl Into<String>, columns: Vec<String>) -> Self {
        Table { x_label: x_label.into(), columns, rows: Vec::new(), row_names: Vec::new() }
    }

    pub fn push(&mut self, x: f64, values: Vec<f64>) {
        debug_assert_eq!(values.len(), self.columns.len());
        self.rows.push((x, values));
    }

    /// Labels rows with text instead of their x values.
    pub fn with_row_names<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Self {
        self.row_names = names.into_iter().map(Into::into).collect();
        debug_assert_eq!(self.row_names.len(), self.rows.len());
        self
    }

    fn x_cell(&self, i: usize) -> String {
        self.row_names.get(i).cloned().unwrap_or_else(|| sig9(self.rows[i].0))
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        let mut header = vec![self.x_label.as_str()];
        header.extend(self.columns.iter().map(String::as_str));
        writeln!(out, "{}", header.join(","))?;
        for (i, (_, values)) in self.rows.iter().enumerate() {
            let mut cells = vec![self.x_cell(i)];
            cells.extend(values.iter().map(|&v| sig9(v)));
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }

    fn write_json(&self, out: &mut dyn Write) -> Result<()> {
        let records: Vec<Value> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, (x, values))| {
                let mut rec = Map::new();
                let x = match self.row_names.get(i) {
                    Some(name) => Value::String(name.clone()),
                    None => json_number(*x),
                };
                rec.insert(self.x_label.clone(), x);
                for (name, &v) in self.columns.iter().zip(values) {
                    rec.insert(name.clone(), json_number(v));
                }
                Value::Object(rec)
            })
            .collect();
        serde_json::to_writer_pretty(&mut *out, &Value::Array(records))?;
        writeln!(out)?;
        Ok(())
    }
}

/// Same value the CSV shows, as a JSON number (`null` for NaN).
fn json_number(v: f64) -> Value {
    sig9(v)
        .parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

/// Nine significant digits, fixed notation for moderate magnitudes and
/// scientific otherwise, trailing zeros removed.
pub fn sig9(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
