//! Counter-based pseudo-random generator for reproducible simulations.
//!
//! SplitMix64: the k-th output is a pure function of `(seed, k)`, so streams
//! can be replayed, split per shot (`seed ^ shot`), and advanced without
//! touching hidden global state. Quality is ample for Monte Carlo sampling;
//! this is not a cryptographic generator.

/// SplitMix64 stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Generator for one shot of a multi-shot run: shot `k` gets an
    /// independent stream from the run seed.
    pub fn for_shot(run_seed: u64, shot: u64) -> Self {
        Self::new(run_seed ^ shot.wrapping_mul(GAMMA).rotate_left(17))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `[0, 1)` with 53-bit resolution.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform index in `[0, n)`. Uses Lemire's multiply-shift reduction;
    /// the modulo bias at n << 2^64 is far below anything observable here.
    #[inline]
    pub fn next_index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (((self.next_u64() as u128) * (n as u128)) >> 64) as usize
    }
}
