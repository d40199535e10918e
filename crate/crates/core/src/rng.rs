//! Seeded random streams.
//!
//! Every sampler draws from a ChaCha8 stream keyed by `(seed, stream)`. ChaCha
//! is counter based: the 64-bit stream id selects a disjoint keystream under
//! the same key, so shards generated in parallel never overlap and results do
//! not depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Generator for sub-stream `stream` of the master `seed`.
pub fn stream(seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform draw on the open interval (0, 1).
#[inline]
pub fn open01<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        // 53 random mantissa bits, offset by half an ulp so 0 is unreachable.
        let u = ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64);
        if u < 1.0 {
            return u;
        }
    }
}

/// Unit-rate exponential by inversion.
#[inline]
pub fn exp1<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    -open01(rng).ln()
}
