use crate::complex::Complex;
use crate::error::{Error, Result};

/// Walsh–Hadamard transform: multiplication by the ±1 character matrix of
/// `Z_2^m`, using only additions and subtractions.
pub fn walsh_hadamard(x: &[Complex]) -> Result<Vec<Complex>> {
    let mut y = x.to_vec();
    walsh_hadamard_in_place(&mut y)?;
    Ok(y)
}

pub fn walsh_hadamard_in_place(data: &mut [Complex]) -> Result<()> {
    let n = data.len();
    if !n.is_power_of_two() {
        return Err(Error::UnsupportedLength(n));
    }
    let mut half = 1;
    while half < n {
        for block in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi) {
                let (s, d) = (*a + *b, *a - *b);
                *a = s;
                *b = d;
            }
        }
        half *= 2;
    }
    Ok(())
}
