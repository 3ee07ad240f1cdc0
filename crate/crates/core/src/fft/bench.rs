use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::Complex;
use crate::dense::DEFAULT_ORACLE_CAP;
use crate::error::{Error, Result};
use crate::fourier::CharacterTable;
use crate::group::FiniteAbelianGroup;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    /// Number of timed batches per size; the fastest is reported.
    pub repetitions: usize,
    /// The dense transform is skipped above this size.
    pub naive_cap: usize,
    /// Each timed batch runs until at least this much time has passed.
    pub min_batch_time: Duration,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            repetitions: 7,
            naive_cap: DEFAULT_ORACLE_CAP,
            min_batch_time: Duration::from_millis(20),
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    /// Time of one `fft` call in the fastest batch.
    pub fft: Duration,
    /// Time of one dense `apply_f` in the fastest batch, if run.
    pub naive: Option<Duration>,
    /// `T(n) / T(n/2)` for the FFT, when the previous row is `n/2`.
    pub doubling_ratio: Option<f64>,
}

impl BenchRow {
    /// Dense time over FFT time.
    pub fn speedup(&self) -> Option<f64> {
        self.naive.map(|t| t.as_secs_f64() / self.fft.as_secs_f64())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn doubling_ratios(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.rows.iter().filter_map(|r| r.doubling_ratio.map(|q| (r.n, q)))
    }

    pub fn row(&self, n: usize) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    /// FFT times never decrease as `n` grows.
    pub fn is_monotone(&self) -> bool {
        self.rows.windows(2).all(|w| w[0].fft <= w[1].fft)
    }
}

/// Best-batch wall time of `fft` (and of the dense transform up to the cap)
/// for each size.
pub fn bench(sizes: &[usize], config: &BenchConfig) -> Result<BenchReport> {
    if let Some(&n) = sizes.iter().find(|n| !n.is_power_of_two()) {
        return Err(Error::UnsupportedLength(n));
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("bench sizes must be strictly increasing"));
    }
    if config.repetitions == 0 {
        return Err(Error::invalid("bench needs at least one repetition"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rows: Vec<BenchRow> = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let x: Vec<Complex> = (0..n)
            .map(|_| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let mut buf = x.clone();
        let fft = best_time(config, || {
            buf.copy_from_slice(&x);
            super::fft_in_place(&mut buf).expect("power-of-two size");
            std::hint::black_box(&buf);
        });
        let naive = (n <= config.naive_cap).then(|| {
            let table = CharacterTable::new(&FiniteAbelianGroup::cyclic(n).expect("n ≥ 1"));
            best_time(config, || {
                std::hint::black_box(table.synthesize(&x).expect("matching length"));
            })
        });
        let doubling_ratio = rows
            .last()
            .filter(|prev| prev.n * 2 == n)
            .map(|prev| fft.as_secs_f64() / prev.fft.as_secs_f64());
        rows.push(BenchRow {
            n,
            fft,
            naive,
            doubling_ratio,
        });
    }
    Ok(BenchReport { rows })
}

fn best_time(config: &BenchConfig, mut f: impl FnMut()) -> Duration {
    // warm-up, also sizes the batch
    let start = Instant::now();
    f();
    let once = start.elapsed().max(Duration::from_nanos(1));
    let per_batch = (config.min_batch_time.as_nanos() / once.as_nanos()).clamp(1, 1 << 20) as u32;

    // interference only ever adds time, so the fastest batch is the
    // closest estimate of the undisturbed cost
    (0..config.repetitions)
        .map(|_| {
            let start = Instant::now();
            for _ in 0..per_batch {
                f();
            }
            start.elapsed() / per_batch
        })
        .min()
        .expect("at least one repetition")
}
