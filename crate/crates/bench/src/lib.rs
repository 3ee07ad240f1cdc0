//! Inputs shared by the criterion benchmarks in `benches/`.

use abelianfft_core::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded vector with entries in the unit square.
pub fn random_vector(n: usize, seed: u64) -> Vec<Complex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

/// Seeded vector of small integers, kept exact by the Walsh-Hadamard transform.
pub fn random_integers(n: usize, seed: u64) -> Vec<Complex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| Complex::new(rng.random_range(-100..=100) as f64, 0.0))
        .collect()
}
