//! Seeded randomness for specializations (ChaCha8, reproducible across platforms).

use alloc::vec::Vec;

use num_bigint::BigInt;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::arith::BigRat;

pub struct Rng(ChaCha8Rng);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Derives an independent stream for a named sub-task.
    pub fn fork(seed: u64, tag: &str) -> Self {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in tag.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        Self::new(seed ^ h)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform integer in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    /// Uniform f64 in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Nonzero rational `a/b` with `1 <= a, b <= bound`.
    pub fn rational(&mut self, bound: i64) -> BigRat {
        let a = self.range(1, bound);
        let b = self.range(1, bound);
        BigRat::new(BigInt::from(a), BigInt::from(b))
    }

    /// `k` pairwise distinct positive rationals avoiding 1 and each other's
    /// inverses, so that no ratio of two of them is 1.
    pub fn distinct_rationals(&mut self, k: usize, bound: i64) -> Vec<BigRat> {
        let mut out: Vec<BigRat> = Vec::with_capacity(k);
        while out.len() < k {
            let r = self.rational(bound);
            if !out.contains(&r) {
                out.push(r);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a: Vec<u64> = (0..4).map({
            let mut r = Rng::new(7);
            move |_| r.next_u64()
        }).collect();
        let mut r = Rng::new(7);
        let b: Vec<u64> = (0..4).map(|_| r.next_u64()).collect();
        assert_eq!(a, b);
        assert_ne!(Rng::fork(7, "a").next_u64(), Rng::fork(7, "b").next_u64());
    }
}
