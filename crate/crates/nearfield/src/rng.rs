//! Deterministic, portable random number generation.
//!
//! Simulation noise must be reproducible bit-for-bit across runs, platforms,
//! and implementations, so this module pins a fully documented generator
//! instead of relying on a library whose stream may change between versions:
//!
//! * **SplitMix64** (Steele, Lea, Flood 2014): `state += 0x9E3779B97F4A7C15`,
//!   output = `mix64(state)` with the standard two-round xor-shift multiply
//!   finalizer.
//! * **Box–Muller** for Gaussian deviates: `sqrt(-2 ln u1) * cos(2 pi u2)`
//!   with `u1, u2` drawn uniformly from `(0, 1]`.
//!
//! Streams are derived by hashing, not by splitting a sequential stream:
//! [`stream_seed`] folds indices into a seed through the same `mix64`
//! finisher, so every (frame, ray) pair owns an independent generator and
//! frames can be produced in any order or in parallel.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive an independent stream seed from a base seed and one index.
#[inline]
pub fn stream_seed(seed: u64, index: u64) -> u64 {
    mix64(seed.wrapping_add(GOLDEN_GAMMA.wrapping_mul(index.wrapping_add(1))))
}

/// Derive an independent stream seed from a base seed and two indices.
#[inline]
pub fn stream_seed2(seed: u64, a: u64, b: u64) -> u64 {
    stream_seed(stream_seed(seed, a), b)
}

/// SplitMix64 generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform in `(0, 1]` (never zero, safe as a log argument).
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 1.0) * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Uniform in `[lo, hi)`.
    #[inline]
    pub fn next_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (self.next_f64() - f64::MIN_POSITIVE) * (hi - lo)
    }

    /// Standard normal deviate via Box–Muller.
    #[inline]
    pub fn next_gaussian(&mut self) -> f64 {
        let u1 = self.next_f64();
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}
