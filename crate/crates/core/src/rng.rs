//! The sample generator.
//!
//! Every random draw in the crate comes from ChaCha8 (8-round ChaCha, `rand_chacha`)
//! keyed by the 64-bit run seed written little-endian into the first 8 key bytes (the
//! remaining 24 bytes are zero), with the sample index selecting the 64-bit stream. A
//! `(seed, index)` pair therefore names an independent, reproducible stream and any
//! sample can be regenerated without touching the others.
//!
//! Uniform reals use the top 53 bits of `next_u64`. Changing any of this changes every
//! survey output and requires a major version bump.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::math;

pub struct SampleRng(ChaCha8Rng);

impl SampleRng {
    pub fn new(seed: u64, index: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(index);
        SampleRng(rng)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[0, n)`, by rejection so every value is equally likely.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        // 2^64 mod n; the values at or above it split evenly into n classes.
        let threshold = n.wrapping_neg() % n;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return x % n;
            }
        }
    }

    /// Unit-rate exponential variate.
    pub fn exponential(&mut self) -> f64 {
        -math::ln(1.0 - self.uniform())
    }
}
