//! Explicit row-major complex matrices. Only oracles and small verification
//! runs build these; structured operators never materialize on their own.

use std::fmt;

use crate::complex::Complex;
use crate::error::{check_len, Error, Result};

/// Default bound on the side length of any dense matrix an oracle may build.
pub const DEFAULT_ORACLE_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex>,
}

impl DenseMatrix {
    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<Complex>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::invalid("matrix dimensions must be positive"));
        }
        check_len(rows * cols, entries.len())?;
        Ok(DenseMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        DenseMatrix {
            rows,
            cols,
            entries: vec![Complex::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from a function of `(row, col)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.entries[i * cols + j] = f(i, j);
            }
        }
        m
    }

    /// Real-valued convenience constructor, mostly for tests.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            check_len(cols, r.len())?;
            entries.extend(r.iter().map(|&x| Complex::new(x, 0.0)));
        }
        Self::from_row_major(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Dense matrix-vector product, summing each row left to right.
    pub fn mat_vec(&self, x: &[Complex]) -> Result<Vec<Complex>> {
        check_len(self.cols, x.len())?;
        Ok(self
            .entries
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn mat_mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        check_len(self.cols, other.rows)?;
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex::new(0.0, 0.0) {
                    continue;
                }
                let src = other.row(k);
                let dst = &mut out.entries[i * other.cols..(i + 1) * other.cols];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += a * s;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        check_len(self.rows, other.rows)?;
        check_len(self.cols, other.cols)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(DenseMatrix { entries, ..*self })
    }

    pub fn scale(&self, factor: Complex) -> DenseMatrix {
        DenseMatrix {
            entries: self.entries.iter().map(|z| z * factor).collect(),
            ..*self
        }
    }

    pub fn transpose(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Conjugate transpose `M*`.
    pub fn adjoint(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &DenseMatrix) -> DenseMatrix {
        let (p, q) = (other.rows, other.cols);
        DenseMatrix::from_fn(self.rows * p, self.cols * q, |i, j| {
            self[(i / p, j / q)] * other[(i % p, j % q)]
        })
    }

    pub fn pow(&self, exp: u32) -> Result<DenseMatrix> {
        check_len(self.rows, self.cols)?;
        let mut acc = DenseMatrix::identity(self.rows);
        for _ in 0..exp {
            acc = acc.mat_mul(self)?;
        }
        Ok(acc)
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &DenseMatrix) -> Result<f64> {
        check_len(self.rows, other.rows)?;
        check_len(self.cols, other.cols)?;
        crate::complex::max_abs_diff(&self.entries, &other.entries)
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|z| format!("{z}")).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub(crate) fn check_cap(what: &'static str, requested: usize, cap: usize) -> Result<()> {
    if requested > cap {
        Err(Error::ResourceLimit { what, requested, cap })
    } else {
        Ok(())
    }
}
