//! Seeded random streams.
//!
//! Every randomised routine takes a base seed and draws from independent
//! ChaCha streams keyed by `(seed, index)`, so trial `i` replays identically
//! whatever the number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// The stream for item `index` of a run seeded with `seed`.
pub fn stream(seed: u64, index: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A stream for a nested index pair, e.g. (trial, retry).
pub fn substream(seed: u64, index: u64, sub: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ sub.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    rng.set_stream(index);
    rng
}
