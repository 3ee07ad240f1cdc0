use std::fmt;
use std::str::FromStr;

use crate::complex::{scale_in_place, unit_root, Complex};
use crate::error::{check_len, Error, Result};
use crate::group::FiniteAbelianGroup;

/// Which of the two mutually inverse transforms to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `D = (1/|G|)·F*`: coordinates in the Fourier basis.
    Analysis,
    /// `F`: back from Fourier coefficients.
    Synthesis,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Analysis => "analysis",
            Direction::Synthesis => "synthesis",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analysis" => Ok(Direction::Analysis),
            "synthesis" => Ok(Direction::Synthesis),
            other => Err(Error::invalid(format!(
                "unknown direction {other:?}, expected analysis or synthesis"
            ))),
        }
    }
}

/// How one cyclic factor `Z_k` is transformed along its axis.
#[derive(Debug, Clone, PartialEq)]
pub enum FactorStrategy {
    /// Radix-2 FFT, for `k` a power of two.
    Radix2 { k: usize },
    /// Dense `k × k` multiply by `F_k`, stored row-major.
    Dense { k: usize, matrix: Vec<Complex> },
}

impl FactorStrategy {
    fn for_factor(k: usize) -> Self {
        if k.is_power_of_two() {
            FactorStrategy::Radix2 { k }
        } else {
            let matrix = (0..k * k).map(|e| unit_root(k, (e / k) * (e % k) % k)).collect();
            FactorStrategy::Dense { k, matrix }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            FactorStrategy::Radix2 { k } | FactorStrategy::Dense { k, .. } => *k,
        }
    }

    fn apply(&self, line: &mut [Complex], scratch: &mut [Complex]) {
        match self {
            FactorStrategy::Radix2 { .. } => {
                super::fft_in_place(line).expect("radix-2 strategy on power-of-two line")
            }
            FactorStrategy::Dense { k, matrix } => {
                for (out, row) in scratch.iter_mut().zip(matrix.chunks_exact(*k)) {
                    *out = row.iter().zip(line.iter()).map(|(a, b)| a * b).sum();
                }
                line.copy_from_slice(scratch);
            }
        }
    }
}

/// Execution plan for the transform on `Z_{k_1} × … × Z_{k_u}`.
///
/// The Fourier matrix factors as `F_{k_1} ⊗ … ⊗ F_{k_u}`, so the transform is
/// applied one coordinate axis at a time, `k_1` first.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanG {
    group: FiniteAbelianGroup,
    strategies: Vec<FactorStrategy>,
}

impl PlanG {
    pub fn new(group: &FiniteAbelianGroup) -> Self {
        PlanG {
            group: group.clone(),
            strategies: group.factors().iter().map(|&k| FactorStrategy::for_factor(k)).collect(),
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn strategies(&self) -> &[FactorStrategy] {
        &self.strategies
    }

    /// True when every factor runs through the radix-2 FFT.
    pub fn is_all_radix2(&self) -> bool {
        self.strategies.iter().all(|s| matches!(s, FactorStrategy::Radix2 { .. }))
    }

    pub fn execute(&self, x: &[Complex], direction: Direction) -> Result<Vec<Complex>> {
        let n = self.group.order();
        check_len(n, x.len())?;
        let mut data = x.to_vec();
        // analysis is conj(F·conj(x))/|G| since conj(F) = F* for symmetric F
        if direction == Direction::Analysis {
            data.iter_mut().for_each(|z| *z = z.conj());
        }
        let mut inner = n;
        for strategy in &self.strategies {
            let k = strategy.size();
            inner /= k;
            let mut line = vec![Complex::new(0.0, 0.0); k];
            let mut scratch = vec![Complex::new(0.0, 0.0); k];
            for block in data.chunks_exact_mut(k * inner) {
                for s in 0..inner {
                    for (j, z) in line.iter_mut().enumerate() {
                        *z = block[j * inner + s];
                    }
                    strategy.apply(&mut line, &mut scratch);
                    for (j, z) in line.iter().enumerate() {
                        block[j * inner + s] = *z;
                    }
                }
            }
        }
        if direction == Direction::Analysis {
            data.iter_mut().for_each(|z| *z = z.conj());
            scale_in_place(&mut data, 1.0 / n as f64);
        }
        Ok(data)
    }
}

/// Fast transform on a finite abelian group; see [`PlanG`].
pub fn g_fft(group: &FiniteAbelianGroup, x: &[Complex], direction: Direction) -> Result<Vec<Complex>> {
    PlanG::new(group).execute(x, direction)
}
