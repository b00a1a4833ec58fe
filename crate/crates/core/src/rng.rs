//! Seeded random streams.
//!
//! Every stream is a ChaCha20 generator keyed by `seed_from_u64(master)`.
//! Batch trial `i` uses the same key with the ChaCha stream id set to `i`, so
//! trials are independent and reproducible regardless of execution order.
//! Gaussian draws use the Box–Muller transform, which keeps the sample
//! sequence identical across platforms.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use std::f64::consts::TAU;

pub type StreamRng = ChaCha20Rng;

/// Generator for a single seed (stream 0).
pub fn from_seed(seed: u64) -> StreamRng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Generator for trial `index` under `master`.
pub fn stream(master: u64, index: u64) -> StreamRng {
    let mut rng = ChaCha20Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng
}

/// Uniform sample in the half-open interval (0, 1].
fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // 53 random mantissa bits, shifted off zero.
    ((rng.random::<u64>() >> 11) as f64 + 1.0) * (1.0 / (1u64 << 53) as f64)
}

/// Pair of independent standard normal reals.
pub fn box_muller<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    let u1 = open_unit(rng);
    let u2 = open_unit(rng);
    let r = (-2.0 * u1.ln()).sqrt();
    let (s, c) = (TAU * u2).sin_cos();
    (r * c, r * s)
}

/// Standard complex Gaussian with `E|z|² = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let (x, y) = box_muller(rng);
    Complex64::new(x, y) * std::f64::consts::FRAC_1_SQRT_2
}
