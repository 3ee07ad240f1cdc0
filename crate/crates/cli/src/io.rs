//! Vector and matrix files.
//!
//! JSON vectors are arrays whose items are `[re, im]` pairs or bare reals.
//! CSV vectors hold one `re,im` (or bare `re`) per line with an optional
//! header. Writers emit 17 significant digits so a parse of the output
//! reproduces every value exactly.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use abelianfft_core::{CVector, Complex, DenseMatrix};
use serde_json::Value;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(CliError::Semantic(format!("unknown format {other:?}"))),
        }
    }
}

impl Format {
    /// `csv` for a `.csv` extension, JSON otherwise.
    pub fn for_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Json,
        }
    }
}

pub fn parse_vector(text: &str, format: Format) -> CliResult<CVector> {
    let elements = match format {
        Format::Json => parse_json(text)?,
        Format::Csv => parse_csv(text)?,
    };
    if elements.is_empty() {
        return Err(CliError::Parse("vector has no elements".into()));
    }
    CVector::new(elements).map_err(|e| CliError::Parse(e.to_string()))
}

fn parse_json(text: &str) -> CliResult<Vec<Complex>> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let Value::Array(items) = value else {
        return Err(CliError::Parse("expected a JSON array".into()));
    };
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let bad = || CliError::Parse(format!("element {i}: expected a number or [re, im]"));
            match item {
                Value::Number(n) => Ok(Complex::new(n.as_f64().ok_or_else(bad)?, 0.0)),
                Value::Array(pair) if pair.len() == 2 => {
                    let re = pair[0].as_f64().ok_or_else(bad)?;
                    let im = pair[1].as_f64().ok_or_else(bad)?;
                    Ok(Complex::new(re, im))
                }
                _ => Err(bad()),
            }
        })
        .collect()
}

fn parse_csv(text: &str) -> CliResult<Vec<Complex>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: Option<Vec<f64>> = fields.iter().map(|f| f.parse().ok()).collect();
        match parsed {
            Some(v) if v.iter().all(|x| x.is_finite()) && (v.len() == 1 || v.len() == 2) => {
                out.push(Complex::new(v[0], v.get(1).copied().unwrap_or(0.0)));
            }
            // a header is only allowed before any data
            None if out.is_empty() && lineno == 0 => continue,
            _ => {
                return Err(CliError::Parse(format!(
                    "line {}: expected `re,im` with finite numbers, got {line:?}",
                    lineno + 1
                )))
            }
        }
    }
    Ok(out)
}

/// Formats a float with 17 significant digits.
fn exact(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_vector(v: &[Complex], format: Format) -> String {
    match format {
        Format::Json => {
            let items: Vec<String> = v
                .iter()
                .map(|z| format!("  [{}, {}]", exact(z.re), exact(z.im)))
                .collect();
            format!("[\n{}\n]\n", items.join(",\n"))
        }
        Format::Csv => {
            let mut out = String::from("re,im\n");
            for z in v {
                out.push_str(&format!("{},{}\n", exact(z.re), exact(z.im)));
            }
            out
        }
    }
}

/// JSON array of rows, each an array of `[re, im]` pairs.
pub fn write_matrix_json(m: &DenseMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let cells: Vec<String> = m
                .row(i)
                .iter()
                .map(|z| format!("[{}, {}]", exact(z.re), exact(z.im)))
                .collect();
            format!("  [{}]", cells.join(", "))
        })
        .collect();
    format!("[\n{}\n]\n", rows.join(",\n"))
}

pub fn read_vector_file(path: &Path, format: Option<Format>) -> CliResult<CVector> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Semantic(format!("cannot read {}: {e}", path.display())))?;
    parse_vector(&text, format.unwrap_or_else(|| Format::for_path(path)))
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents)
        .map_err(|e| CliError::Semantic(format!("cannot write {}: {e}", path.display())))
}
