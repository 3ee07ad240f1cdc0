//! Complex scalars, validated complex vectors, roots of unity and the
//! elementwise products the transforms are built from.

use std::f64::consts::TAU;
use std::ops::Deref;

use crate::error::{check_len, Error, Result};

pub type Complex = num_complex::Complex64;

/// Default absolute comparison tolerance, before scaling by the input norm.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A non-empty vector of finite complex numbers.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CVector(Vec<Complex>);

impl CVector {
    pub fn new(elements: Vec<Complex>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::invalid("vector must have at least one element"));
        }
        if let Some(j) = elements.iter().position(|z| !z.is_finite()) {
            return Err(Error::invalid(format!("element {j} is not finite")));
        }
        Ok(CVector(elements))
    }

    pub fn from_reals(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&re| Complex::new(re, 0.0)).collect())
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Complex> {
        self.0
    }
}

impl Deref for CVector {
    type Target = [Complex];

    fn deref(&self) -> &[Complex] {
        &self.0
    }
}

impl TryFrom<Vec<Complex>> for CVector {
    type Error = Error;

    fn try_from(v: Vec<Complex>) -> Result<Self> {
        CVector::new(v)
    }
}

impl From<CVector> for Vec<Complex> {
    fn from(v: CVector) -> Self {
        v.0
    }
}

/// `e^{2πi·k/n}`, with `k` reduced modulo `n` before the angle is formed.
///
/// Quarter turns are returned exactly; every other angle goes through a
/// single `sin_cos`, never repeated multiplication.
pub fn root_of_unity(n: usize, k: i64) -> Result<Complex> {
    if n == 0 {
        return Err(Error::invalid("root of unity order must be positive"));
    }
    Ok(unit_root(n, k.rem_euclid(n as i64) as usize))
}

/// `root_of_unity` for an already reduced exponent `r < n`.
#[inline]
pub(crate) fn unit_root(n: usize, r: usize) -> Complex {
    debug_assert!(r < n);
    // 4r/n is an integer exactly when the angle is a multiple of π/2.
    let quarter = 4 * r as u128;
    if quarter.is_multiple_of(n as u128) {
        return match quarter / n as u128 {
            0 => Complex::new(1.0, 0.0),
            1 => Complex::new(0.0, 1.0),
            2 => Complex::new(-1.0, 0.0),
            _ => Complex::new(0.0, -1.0),
        };
    }
    let (s, c) = (TAU * r as f64 / n as f64).sin_cos();
    Complex::new(c, s)
}

/// Componentwise product `u ∘ v`.
pub fn hadamard(u: &[Complex], v: &[Complex]) -> Result<Vec<Complex>> {
    check_len(u.len(), v.len())?;
    Ok(u.iter().zip(v).map(|(a, b)| a * b).collect())
}

/// `Σ_j conj(u_j)·v_j`; the first argument is the conjugated one.
pub fn inner_product(u: &[Complex], v: &[Complex]) -> Result<Complex> {
    check_len(u.len(), v.len())?;
    Ok(u.iter().zip(v).map(|(a, b)| a.conj() * b).sum())
}

/// `max_j |u_j − v_j|`, the comparator every oracle check goes through.
pub fn max_abs_diff(u: &[Complex], v: &[Complex]) -> Result<f64> {
    check_len(u.len(), v.len())?;
    Ok(u.iter()
        .zip(v)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max))
}

/// `max_j |u_j|`; zero for an empty slice.
pub fn inf_norm(u: &[Complex]) -> f64 {
    u.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Absolute tolerance `tol · max(1, ‖x‖_∞)` for comparisons involving `x`.
pub fn scaled_tolerance(tol: f64, x: &[Complex]) -> f64 {
    tol * inf_norm(x).max(1.0)
}

pub(crate) fn scale_in_place(x: &mut [Complex], factor: f64) {
    for z in x {
        *z *= factor;
    }
}
