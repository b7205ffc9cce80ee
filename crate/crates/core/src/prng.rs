//! Seeded, splittable pseudorandom source.
//!
//! A [`Prng`] is identified by a `(seed, stream)` pair. The same pair always
//! yields the same sequence; different streams under one seed are independent
//! ChaCha keystreams, so parallel work should give every worker its own stream.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct Prng {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl Prng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Prng { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// A fresh generator on another stream of the same seed, starting at the
    /// beginning of that stream. Does not advance `self`.
    pub fn with_stream(&self, stream: u64) -> Prng {
        Prng::new(self.seed, stream)
    }

    /// Derives an independent child generator, advancing `self`.
    pub fn fork(&mut self) -> Prng {
        let seed = self.rng.next_u64();
        Prng::new(seed, self.stream)
    }

    pub fn bit(&mut self) -> bool {
        self.rng.random::<bool>()
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform integer in `0..bound`. `bound` must be positive.
    pub fn below(&mut self, bound: usize) -> usize {
        self.rng.random_range(0..bound)
    }

    /// Fills `words` with uniform bits.
    pub fn fill_words(&mut self, words: &mut [u64]) {
        for w in words {
            *w = self.rng.next_u64();
        }
    }

    /// A uniformly random `k`-subset of `0..n`, sorted ascending.
    pub fn k_subset(&mut self, n: usize, k: usize) -> Vec<usize> {
        let mut out = rand::seq::index::sample(&mut self.rng, n, k).into_vec();
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_and_stream_repeat() {
        let mut a = Prng::new(7, 3);
        let mut b = Prng::new(7, 3);
        let xs: Vec<u64> = (0..16).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..16).map(|_| b.next_u64()).collect();
        assert_eq!(xs, ys);
    }

    #[test]
    fn streams_differ() {
        let mut a = Prng::new(7, 0);
        let mut b = Prng::new(7, 1);
        let xs: Vec<u64> = (0..4).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..4).map(|_| b.next_u64()).collect();
        assert_ne!(xs, ys);
    }

    #[test]
    fn streams_are_uncorrelated() {
        // Agreement rate of bits across two streams should be near 1/2.
        let mut a = Prng::new(11, 0);
        let mut b = Prng::new(11, 1);
        let words = 4096;
        let agree: u32 = (0..words)
            .map(|_| (!(a.next_u64() ^ b.next_u64())).count_ones())
            .sum();
        let rate = agree as f64 / (words * 64) as f64;
        assert!((rate - 0.5).abs() < 4.0 * (0.25 / (words * 64) as f64).sqrt());
    }

    #[test]
    fn k_subset_is_sorted_and_distinct() {
        let mut r = Prng::new(1, 0);
        for _ in 0..100 {
            let s = r.k_subset(20, 5);
            assert_eq!(s.len(), 5);
            assert!(s.windows(2).all(|w| w[0] < w[1]));
            assert!(s.iter().all(|&x| x < 20));
        }
    }
}
