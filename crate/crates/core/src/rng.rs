//! Seeded random streams.
//!
//! Every stream is a ChaCha8 generator keyed by `ChaCha8Rng::seed_from_u64(seed)`
//! with the 64-bit stream selector set to the stream index. Uniform variates are
//! built from the top 53 bits of `next_u64` as `(k + 0.5) / 2^53`, so they lie
//! strictly inside (0, 1). Pinning both choices keeps seeds portable.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform variate in the open interval (0, 1).
#[inline]
pub fn open_unit<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
    ((rng.next_u64() >> 11) as f64 + 0.5) * SCALE
}
