//! Seeded uniform streams. Every random draw in the crate goes through an
//! explicitly seeded generator; there is no global RNG.

use libm::{exp, log};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

const TWO_POW_M53: f64 = 1.0 / 9_007_199_254_740_992.0;

#[derive(Debug, Clone)]
pub struct UniformStream {
    rng: ChaCha8Rng,
}

impl UniformStream {
    pub fn new(seed: u64) -> Self {
        UniformStream {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream `stream` under the same seed.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        UniformStream { rng }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on the open interval `(0, 1)`.
    pub fn next_open(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) as f64 + 0.5) * TWO_POW_M53
    }

    /// Uniform on `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_open()
    }

    /// Log-uniform on `[lo, hi]`, both positive.
    pub fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        exp(self.uniform(log(lo), log(hi)))
    }

    /// Index in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_open() * n as f64) as usize % n.max(1)
    }

    /// Geometric count on `{1, 2, ...}` with success probability `p`,
    /// capped at `cap`. Returns the count and whether the cap was hit.
    pub fn geometric(&mut self, p: f64, cap: u64) -> (u64, bool) {
        if p >= 1.0 {
            return (1, false);
        }
        let u = self.next_open();
        let k = libm::ceil(log(u) / libm::log1p(-p));
        if !(k < cap as f64) {
            return (cap, true);
        }
        ((k as u64).max(1), false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_interval_and_determinism() {
        let mut a = UniformStream::new(5);
        let mut b = UniformStream::new(5);
        for _ in 0..10_000 {
            let u = a.next_open();
            assert!(u > 0.0 && u < 1.0);
            assert_eq!(u, b.next_open());
        }
    }

    #[test]
    fn streams_differ() {
        let mut a = UniformStream::with_stream(5, 0);
        let mut b = UniformStream::with_stream(5, 1);
        assert_ne!(a.next_u64(), b.next_u64());
    }

    #[test]
    fn geometric_mean() {
        let mut s = UniformStream::new(11);
        let p = 0.3;
        let n = 200_000;
        let total: u64 = (0..n).map(|_| s.geometric(p, 10_000_000).0).sum();
        let mean = total as f64 / n as f64;
        let sd = libm::sqrt((1.0 - p) / (p * p) / n as f64);
        assert!((mean - 1.0 / p).abs() < 4.0 * sd, "mean {mean}");
    }
}
