//! Human-readable and `--porcelain` text output.

use std::fmt;

use abelianfft_core::Complex;

/// Formats `z` as `re±imi`, printing values that round to zero as `0`.
pub fn fmt_complex(z: Complex, precision: usize) -> String {
    let re = snap(z.re, precision);
    let im = snap(z.im, precision);
    let sign = if im.is_sign_negative() { '-' } else { '+' };
    format!("{re:.precision$}{sign}{:.precision$}i", im.abs())
}

fn snap(x: f64, precision: usize) -> f64 {
    let unit = 0.5 * 10f64.powi(-(precision.min(300) as i32));
    if x.abs() < unit {
        0.0
    } else {
        x
    }
}

/// Rows of cells: tab separated in porcelain mode, space aligned otherwise.
#[derive(Debug, Default)]
pub struct Table {
    porcelain: bool,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(porcelain: bool) -> Self {
        Table { porcelain, rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.porcelain {
            for row in &self.rows {
                writeln!(f, "{}", row.join("\t"))?;
            }
            return Ok(());
        }
        let columns = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..columns)
            .map(|c| {
                self.rows
                    .iter()
                    .filter_map(|r| r.get(c))
                    .map(|s| s.chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        for row in &self.rows {
            let mut line = String::new();
            for (c, cell) in row.iter().enumerate() {
                if c > 0 {
                    line.push_str("  ");
                }
                let pad = widths[c] - cell.chars().count();
                line.push_str(cell);
                line.extend(std::iter::repeat_n(' ', pad));
            }
            writeln!(f, "{}", line.trim_end())?;
        }
        Ok(())
    }
}
