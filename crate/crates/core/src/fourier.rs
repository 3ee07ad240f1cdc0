//! The dense Fourier transform on `Z_n` and on finite abelian groups:
//! characters, Fourier bases, circulant spectra and diagonalization checks.
//!
//! Normalization follows one convention throughout the crate. The Fourier
//! matrix `F` has the characters `χ_g` as columns, `F(x, g) = χ_g(x)`.
//! *Synthesis* multiplies by `F`; *analysis* multiplies by
//! `D = (1/|G|)·F*`, the inverse of `F`.
//!
//! Everything here is quadratic in `|G|` and serves as the oracle the fast
//! transforms in [`crate::fft`] are checked against.

use crate::complex::{unit_root, Complex};
use crate::dense::{check_cap, DenseMatrix};
use crate::error::{check_len, Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElement};

/// `χ_k = [w^{0·k}, w^{1·k}, …, w^{(n−1)k}]` with `w = e^{2πi/n}`.
pub fn fourier_column(n: usize, k: usize) -> Result<Vec<Complex>> {
    if n == 0 || k >= n {
        return Err(Error::invalid(format!("column {k} out of range for n = {n}")));
    }
    Ok((0..n).map(|j| unit_root(n, (j * k) % n)).collect())
}

/// `χ_g(x) = e(Σ_i g_i x_i / k_i)` over all `x` in lexicographic order.
pub fn character(group: &FiniteAbelianGroup, g: &GroupElement) -> Result<Vec<Complex>> {
    let gi = group.index_of(g)?;
    let table = CharacterTable::new(group);
    Ok((0..group.order()).map(|x| table.value(x, gi)).collect())
}

/// `χ_g` assembled as `χ_{g_1} ⊗ χ_{g_2} ⊗ … ⊗ χ_{g_u}` from per-factor
/// Fourier columns. Computes the same vector as [`character`] by a different
/// route.
pub fn character_kronecker(group: &FiniteAbelianGroup, g: &GroupElement) -> Result<Vec<Complex>> {
    group.index_of(g)?;
    let mut acc = vec![Complex::new(1.0, 0.0)];
    for (&k, &gi) in group.factors().iter().zip(g.coords()) {
        let col = fourier_column(k, gi)?;
        acc = acc
            .iter()
            .flat_map(|a| col.iter().map(move |b| a * b))
            .collect();
    }
    Ok(acc)
}

/// `(−1)^{Σ_{i∈S} x_i}` on the Boolean cube `Z_2^n`; `subset` holds
/// 1-based coordinate positions.
pub fn boolean_character(n: usize, subset: &[usize]) -> Result<Vec<Complex>> {
    if n >= usize::BITS as usize {
        return Err(Error::invalid(format!("Boolean cube of dimension {n} is too large")));
    }
    let mut mask = 0usize;
    for &i in subset {
        if i == 0 || i > n {
            return Err(Error::invalid(format!("position {i} outside 1..={n}")));
        }
        // coordinate x_1 is the most significant bit of the lexicographic index
        mask |= 1 << (n - i);
    }
    Ok((0..1usize << n)
        .map(|x| {
            let sign = if (x & mask).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
            Complex::new(sign, 0.0)
        })
        .collect())
}

/// Precomputed phases for evaluating `F(x, g)` in O(rank) per entry.
///
/// With `L = lcm(k_i)`, `χ_g(x) = w_L^{Σ_i g_i x_i (L/k_i)}`; the roots
/// `w_L^r` are tabulated once.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: FiniteAbelianGroup,
    modulus: usize,
    roots: Vec<Complex>,
    steps: Vec<usize>,
    // digits[x·rank + i] = x_i
    digits: Vec<usize>,
}

impl CharacterTable {
    pub fn new(group: &FiniteAbelianGroup) -> Self {
        let modulus = group.factors().iter().fold(1, |l, &k| lcm(l, k));
        let roots = (0..modulus).map(|r| unit_root(modulus, r)).collect();
        let steps = group.factors().iter().map(|&k| modulus / k).collect();
        let digits = (0..group.order()).flat_map(|x| group.digits(x)).collect();
        CharacterTable {
            group: group.clone(),
            modulus,
            roots,
            steps,
            digits,
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// `χ_g(x)` for lexicographic indices `x` and `g`.
    #[inline]
    pub fn value(&self, x: usize, g: usize) -> Complex {
        self.roots[self.phase(x, g)]
    }

    fn phase(&self, x: usize, g: usize) -> usize {
        let rank = self.steps.len();
        let xs = &self.digits[x * rank..(x + 1) * rank];
        let gs = &self.digits[g * rank..(g + 1) * rank];
        // each term is below k_i·L, far inside u128
        let acc = xs
            .iter()
            .zip(gs)
            .zip(&self.steps)
            .fold(0u128, |acc, ((&a, &b), &s)| acc + a as u128 * b as u128 * s as u128);
        (acc % self.modulus as u128) as usize
    }

    /// Calls `f(g, phase)` for every `g` in lexicographic order, where
    /// `χ_g(x) = w_L^phase`. The phase is updated incrementally as an
    /// odometer over the digits of `g`.
    fn for_each_phase(&self, x: usize, mut f: impl FnMut(usize, usize)) {
        let rank = self.steps.len();
        let l = self.modulus;
        let factors = self.group.factors();
        // advancing digit i adds x_i·(L/k_i); wrapping it from k_i − 1 to 0
        // subtracts (k_i − 1) times that
        let inc: Vec<usize> = (0..rank)
            .map(|i| (self.digits[x * rank + i] * self.steps[i]) % l)
            .collect();
        let wrap: Vec<usize> = (0..rank)
            .map(|i| (inc[i] * (factors[i] - 1)) % l)
            .collect();
        let mut digits = vec![0usize; rank];
        let mut phase = 0usize;
        for g in 0..self.group.order() {
            f(g, phase);
            for i in (0..rank).rev() {
                if digits[i] + 1 < factors[i] {
                    digits[i] += 1;
                    phase += inc[i];
                    if phase >= l {
                        phase -= l;
                    }
                    break;
                }
                digits[i] = 0;
                phase += l - wrap[i];
                if phase >= l {
                    phase -= l;
                }
            }
        }
    }

    /// Dense `F` with `F(x, g) = χ_g(x)`.
    pub fn matrix(&self) -> DenseMatrix {
        let n = self.group.order();
        let mut entries = Vec::with_capacity(n * n);
        for x in 0..n {
            self.for_each_phase(x, |_, p| entries.push(self.roots[p]));
        }
        DenseMatrix::from_row_major(n, n, entries).expect("n × n entries")
    }

    /// `F·x`, row by row.
    pub fn synthesize(&self, x: &[Complex]) -> Result<Vec<Complex>> {
        let n = self.group.order();
        check_len(n, x.len())?;
        Ok((0..n)
            .map(|row| {
                let mut acc = Complex::new(0.0, 0.0);
                self.for_each_phase(row, |g, p| acc += self.roots[p] * x[g]);
                acc
            })
            .collect())
    }

    /// `F*·x`, without the `1/|G|` factor.
    pub fn adjoint_apply(&self, x: &[Complex]) -> Result<Vec<Complex>> {
        let n = self.group.order();
        check_len(n, x.len())?;
        // F is symmetric, so row g of F* is the conjugate of row g of F
        Ok((0..n)
            .map(|g| {
                let mut acc = Complex::new(0.0, 0.0);
                self.for_each_phase(g, |y, p| acc += self.roots[p].conj() * x[y]);
                acc
            })
            .collect())
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// The Fourier matrix of `group`, capped at `cap` rows.
pub fn dft_matrix(group: &FiniteAbelianGroup, cap: usize) -> Result<DenseMatrix> {
    check_cap("Fourier matrix", group.order(), cap)?;
    Ok(CharacterTable::new(group).matrix())
}

/// Synthesis `F·x`, computed densely.
pub fn apply_f(group: &FiniteAbelianGroup, x: &[Complex]) -> Result<Vec<Complex>> {
    CharacterTable::new(group).synthesize(x)
}

/// Analysis `D·x = (1/|G|)·F*·x`, computed densely.
pub fn apply_d(group: &FiniteAbelianGroup, x: &[Complex]) -> Result<Vec<Complex>> {
    let mut y = CharacterTable::new(group).adjoint_apply(x)?;
    let scale = 1.0 / group.order() as f64;
    for z in &mut y {
        *z *= scale;
    }
    Ok(y)
}

/// `F⁻¹ = D`.
pub fn apply_f_inverse(group: &FiniteAbelianGroup, y: &[Complex]) -> Result<Vec<Complex>> {
    apply_d(group, y)
}

/// Eigenvalues `(Λ_g)` of a (G-)circulant, in lexicographic `g` order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<Complex>,
}

impl Spectrum {
    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl std::ops::Index<usize> for Spectrum {
    type Output = Complex;

    fn index(&self, g: usize) -> &Complex {
        &self.values[g]
    }
}

impl From<Vec<Complex>> for Spectrum {
    fn from(values: Vec<Complex>) -> Self {
        Spectrum { values }
    }
}

/// `Λ_k = Σ_j c_j w^{−jk}`, i.e. `Λ = conj(F)·c`.
pub fn circulant_eigenvalues(c: &[Complex]) -> Result<Spectrum> {
    if c.is_empty() {
        return Err(Error::invalid("circulant generator must be non-empty"));
    }
    let group = FiniteAbelianGroup::cyclic(c.len())?;
    g_circulant_eigenvalues(&group, c)
}

/// `Λ_g = Σ_x v(x)·conj(χ_g(x))`, the eigenvalue of the G-circulant of `v`
/// on the eigenvector `χ_g`.
pub fn g_circulant_eigenvalues(group: &FiniteAbelianGroup, v: &[Complex]) -> Result<Spectrum> {
    Ok(Spectrum {
        values: CharacterTable::new(group).adjoint_apply(v)?,
    })
}

/// Max entrywise residual of `C − F·diag(Λ)·(1/|G|)F*` for the G-circulant
/// of `v`.
pub fn diagonalize_check(group: &FiniteAbelianGroup, v: &[Complex], cap: usize) -> Result<f64> {
    let n = group.order();
    check_cap("diagonalization check", n, cap)?;
    check_len(n, v.len())?;
    let c = crate::circulant::GCirculant::new(group.clone(), v.to_vec())?.materialize(cap)?;
    let table = CharacterTable::new(group);
    let f = table.matrix();
    let lambda = g_circulant_eigenvalues(group, v)?;
    let scale = 1.0 / n as f64;
    let f_diag = DenseMatrix::from_fn(n, n, |x, g| f[(x, g)] * lambda[g] * scale);
    let rebuilt = f_diag.mat_mul(&f.adjoint())?;
    c.max_abs_diff(&rebuilt)
}
