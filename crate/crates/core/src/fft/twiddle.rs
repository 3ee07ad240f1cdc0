use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::complex::{unit_root, Complex};

/// Roots `w_n^k`, `k = 0..n/2`, for a power-of-two `n`. These are the
/// diagonal of the butterfly matrix `A_{n/2} = diag(1, w_n, …, w_n^{n/2−1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwiddleTable {
    n: usize,
    powers: Vec<Complex>,
}

impl TwiddleTable {
    pub fn new(n: usize) -> Self {
        assert!(n.is_power_of_two(), "twiddle table size {n} is not a power of two");
        TwiddleTable {
            n,
            powers: (0..n / 2).map(|k| unit_root(n, k)).collect(),
        }
    }

    /// Shared table for size `n`, built at most once per process.
    pub fn cached(n: usize) -> Arc<TwiddleTable> {
        static CACHE: OnceLock<RwLock<HashMap<usize, Arc<TwiddleTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.read().expect("twiddle cache poisoned").get(&n) {
            return t.clone();
        }
        cache
            .write()
            .expect("twiddle cache poisoned")
            .entry(n)
            .or_insert_with(|| Arc::new(TwiddleTable::new(n)))
            .clone()
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn powers(&self) -> &[Complex] {
        &self.powers
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::root_of_unity;

    #[test]
    fn table_holds_half_the_roots() {
        let t = TwiddleTable::new(8);
        assert_eq!(t.powers().len(), 4);
        for (k, w) in t.powers().iter().enumerate() {
            assert!((w - root_of_unity(8, k as i64).unwrap()).norm() < 1e-15);
        }
        assert!(TwiddleTable::new(1).powers().is_empty());
    }

    #[test]
    fn cache_returns_one_instance() {
        let a = TwiddleTable::cached(64);
        let handles: Vec<_> = (0..8)
            .map(|_| std::thread::spawn(|| TwiddleTable::cached(64)))
            .collect();
        for h in handles {
            assert!(Arc::ptr_eq(&a, &h.join().unwrap()));
        }
    }
}
