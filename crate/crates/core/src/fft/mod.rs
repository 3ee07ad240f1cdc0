//! Fast transforms: iterative radix-2 Cooley–Tukey, fast circular and
//! linear convolution, the axis-by-axis transform on finite abelian groups
//! and the fast Walsh–Hadamard transform.
//!
//! [`fft`] computes `F_n·x` (synthesis, positive exponent) so that it can be
//! compared directly with [`crate::fourier::apply_f`].

mod bench;
mod plan;
mod twiddle;
mod walsh;

pub use bench::{bench, BenchConfig, BenchReport, BenchRow};
pub use plan::{g_fft, Direction, FactorStrategy, PlanG};
pub use twiddle::TwiddleTable;
pub use walsh::{walsh_hadamard, walsh_hadamard_in_place};

use crate::complex::{scale_in_place, Complex};
use crate::error::{check_len, Error, Result};

/// `F_n·x` for a power-of-two `n`.
pub fn fft(x: &[Complex]) -> Result<Vec<Complex>> {
    let mut y = x.to_vec();
    fft_in_place(&mut y)?;
    Ok(y)
}

/// `(1/n)·conj(F_n)·y`, computed as `conj(fft(conj(y)))/n`.
pub fn ifft(y: &[Complex]) -> Result<Vec<Complex>> {
    let mut x: Vec<Complex> = y.iter().map(|z| z.conj()).collect();
    fft_in_place(&mut x)?;
    let scale = 1.0 / x.len() as f64;
    for z in &mut x {
        *z = z.conj() * scale;
    }
    Ok(x)
}

/// In-place `F_n·x`: bit-reversal permutation followed by `log₂ n`
/// butterfly stages.
pub fn fft_in_place(data: &mut [Complex]) -> Result<()> {
    let n = data.len();
    if !n.is_power_of_two() {
        return Err(Error::UnsupportedLength(n));
    }
    if n == 1 {
        return Ok(());
    }
    bit_reverse_permute(data);
    let table = TwiddleTable::cached(n);
    let twiddles = table.powers();

    let mut half = 1;
    while half < n {
        // w_{2·half}^j = w_n^{j·stride}
        let stride = n / (2 * half);
        for block in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (j, (a, b)) in lo.iter_mut().zip(hi).enumerate() {
                let t = butterfly_twiddle(twiddles[j * stride]) * *b;
                let u = *a;
                *a = u + t;
                *b = u - t;
            }
        }
        half *= 2;
    }
    Ok(())
}

#[cfg(not(feature = "mutate-butterfly"))]
#[inline(always)]
fn butterfly_twiddle(w: Complex) -> Complex {
    w
}

/// Deliberately wrong twiddle sign, used to show that `verify` catches a
/// broken butterfly.
#[cfg(feature = "mutate-butterfly")]
#[inline(always)]
fn butterfly_twiddle(w: Complex) -> Complex {
    w.conj()
}

fn bit_reverse_permute(data: &mut [Complex]) {
    let n = data.len();
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if i < j {
            data.swap(i, j);
        }
    }
}

/// Circular convolution `c∗d = (1/n)·F·((conj(F)c) ∘ (conj(F)d))` using
/// three length-`n` FFT passes.
pub fn fast_convolve(c: &[Complex], d: &[Complex]) -> Result<Vec<Complex>> {
    check_len(c.len(), d.len())?;
    let n = c.len();
    if !n.is_power_of_two() {
        return Err(Error::UnsupportedLength(n));
    }
    let spectrum = |v: &[Complex]| -> Result<Vec<Complex>> {
        let mut s: Vec<Complex> = v.iter().map(|z| z.conj()).collect();
        fft_in_place(&mut s)?;
        Ok(s.into_iter().map(|z| z.conj()).collect())
    };
    let lc = spectrum(c)?;
    let ld = spectrum(d)?;
    let mut prod: Vec<Complex> = lc.iter().zip(&ld).map(|(a, b)| a * b).collect();
    fft_in_place(&mut prod)?;
    scale_in_place(&mut prod, 1.0 / n as f64);
    Ok(prod)
}

/// Linear (polynomial) convolution of lengths `p` and `q`, via zero
/// padding to the next power of two `≥ p + q − 1`.
pub fn linear_convolve(c: &[Complex], d: &[Complex]) -> Result<Vec<Complex>> {
    if c.is_empty() || d.is_empty() {
        return Err(Error::invalid("linear convolution needs non-empty inputs"));
    }
    let out_len = c.len() + d.len() - 1;
    let n = out_len.next_power_of_two();
    let pad = |v: &[Complex]| {
        let mut p = v.to_vec();
        p.resize(n, Complex::new(0.0, 0.0));
        p
    };
    let mut y = fast_convolve(&pad(c), &pad(d))?;
    y.truncate(out_len);
    Ok(y)
}

/// Circular convolution on `Z_n` for any `n`: the FFT path for powers of
/// two, the quadratic oracle otherwise.
pub fn convolve(c: &[Complex], d: &[Complex]) -> Result<Vec<Complex>> {
    if c.len().is_power_of_two() {
        fast_convolve(c, d)
    } else {
        crate::circulant::naive_convolve(c, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::naive_convolve;
    use crate::complex::max_abs_diff;
    use crate::dense::DenseMatrix;
    use crate::fourier::{apply_f, dft_matrix};
    use crate::group::FiniteAbelianGroup;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn reals(v: &[f64]) -> Vec<Complex> {
        v.iter().map(|&x| c(x, 0.0)).collect()
    }

    fn pseudo_random(n: usize, seed: u64) -> Vec<Complex> {
        let mut s = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
        let mut next = || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        (0..n).map(|_| c(next(), next())).collect()
    }

    #[test]
    fn fft_examples() {
        assert_eq!(fft(&reals(&[1.0, 0.0, 0.0, 0.0])).unwrap(), reals(&[1.0; 4]));
        assert_eq!(fft(&reals(&[1.0; 4])).unwrap(), reals(&[4.0, 0.0, 0.0, 0.0]));
        let y = fft(&reals(&[0.0, 1.0, 0.0, -1.0])).unwrap();
        let expected = vec![c(0.0, 0.0), c(0.0, 2.0), c(0.0, 0.0), c(0.0, -2.0)];
        assert!(max_abs_diff(&y, &expected).unwrap() < 1e-15);
        assert_eq!(fft(&reals(&[3.5])).unwrap(), reals(&[3.5]));
    }

    #[test]
    fn fft_rejects_other_lengths() {
        assert_eq!(fft(&reals(&[1.0; 6])), Err(Error::UnsupportedLength(6)));
        assert_eq!(fft(&[]), Err(Error::UnsupportedLength(0)));
        assert_eq!(ifft(&reals(&[1.0; 3])), Err(Error::UnsupportedLength(3)));
    }

    #[test]
    fn ifft_examples() {
        assert_eq!(ifft(&reals(&[4.0, 0.0, 0.0, 0.0])).unwrap(), reals(&[1.0; 4]));
        assert_eq!(ifft(&reals(&[1.0; 4])).unwrap(), reals(&[1.0, 0.0, 0.0, 0.0]));
        for k in 0..=12 {
            let x = pseudo_random(1 << k, k as u64);
            let back = ifft(&fft(&x).unwrap()).unwrap();
            assert!(max_abs_diff(&back, &x).unwrap() < 1e-10);
        }
    }

    #[test]
    fn fft_matches_dense_oracle() {
        for k in 0..=10 {
            let n = 1 << k;
            let x = pseudo_random(n, 100 + k as u64);
            let g = FiniteAbelianGroup::cyclic(n).unwrap();
            let err = max_abs_diff(&fft(&x).unwrap(), &apply_f(&g, &x).unwrap()).unwrap();
            assert!(err <= 1e-9 * (k.max(1) as f64), "n = {n}: {err}");
        }
    }

    /// `F_4 = [[I, A],[I, −A]] · diag(F_2, F_2) · P_π` with
    /// `A_2 = diag(1, w_4)` and `P_π` putting even components first.
    #[test]
    fn four_point_factorization() {
        let i = c(0.0, 1.0);
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        let butterfly = DenseMatrix::from_row_major(
            4,
            4,
            vec![
                one, zero, one, zero, //
                zero, one, zero, i, //
                one, zero, -one, zero, //
                zero, one, zero, -i,
            ],
        )
        .unwrap();
        let f2 = DenseMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, -1.0]]).unwrap();
        let halves = DenseMatrix::from_fn(4, 4, |r, s| {
            if r / 2 == s / 2 {
                f2[(r % 2, s % 2)]
            } else {
                zero
            }
        });
        let perm = DenseMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        let product = butterfly.mat_mul(&halves).unwrap().mat_mul(&perm).unwrap();
        let f4 = dft_matrix(&FiniteAbelianGroup::cyclic(4).unwrap(), 16).unwrap();
        assert!(product.max_abs_diff(&f4).unwrap() <= 1e-12);
    }

    #[test]
    fn real_input_has_conjugate_symmetric_image() {
        let n = 256;
        let x: Vec<_> = pseudo_random(n, 5).into_iter().map(|z| c(z.re, 0.0)).collect();
        let y = fft(&x).unwrap();
        for k in 1..n {
            assert!((y[k] - y[n - k].conj()).norm() < 1e-10);
        }
    }

    #[test]
    fn fast_convolve_examples() {
        let v = reals(&[1.0, 2.0, 3.0, 4.0]);
        let d0 = reals(&[1.0, 0.0, 0.0, 0.0]);
        let d1 = reals(&[0.0, 1.0, 0.0, 0.0]);
        assert!(max_abs_diff(&fast_convolve(&v, &d0).unwrap(), &v).unwrap() < 1e-12);
        assert!(
            max_abs_diff(&fast_convolve(&v, &d1).unwrap(), &reals(&[4.0, 1.0, 2.0, 3.0])).unwrap()
                < 1e-12
        );
        let b = reals(&[1.0, 1.0, 0.0, 0.0]);
        assert!(
            max_abs_diff(&fast_convolve(&b, &b).unwrap(), &reals(&[1.0, 2.0, 1.0, 0.0])).unwrap()
                < 1e-12
        );
        assert!(matches!(fast_convolve(&v, &b[..3]), Err(Error::Dimension { .. })));
        assert_eq!(fast_convolve(&v[..3], &v[..3]), Err(Error::UnsupportedLength(3)));
    }

    #[test]
    fn fast_convolve_matches_naive() {
        for k in 0..=9 {
            let n = 1 << k;
            let a = pseudo_random(n, 7 + k);
            let b = pseudo_random(n, 70 + k);
            let fast = fast_convolve(&a, &b).unwrap();
            let slow = naive_convolve(&a, &b).unwrap();
            assert!(max_abs_diff(&fast, &slow).unwrap() <= 1e-8 * crate::complex::inf_norm(&slow).max(1.0));
        }
    }

    #[test]
    fn linear_convolve_examples() {
        let near = |a: Vec<Complex>, b: &[f64]| max_abs_diff(&a, &reals(b)).unwrap() < 1e-12;
        assert!(near(linear_convolve(&reals(&[1.0, 1.0]), &reals(&[1.0, 1.0])).unwrap(), &[1.0, 2.0, 1.0]));
        let d = reals(&[2.0, -1.0, 0.5]);
        assert!(near(linear_convolve(&reals(&[1.0]), &d).unwrap(), &[2.0, -1.0, 0.5]));
        assert!(near(
            linear_convolve(&reals(&[1.0, 2.0, 3.0]), &reals(&[4.0, 5.0])).unwrap(),
            &[4.0, 13.0, 22.0, 15.0]
        ));
        assert!(linear_convolve(&[], &d).is_err());
    }

    #[test]
    fn convolve_dispatches_by_length() {
        let a = reals(&[1.0, 2.0, 3.0]);
        let d = reals(&[1.0, 0.0, 0.0]);
        assert_eq!(convolve(&a, &d).unwrap(), a);
    }
}
