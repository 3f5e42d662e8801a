//! Deterministic seed derivation.
//!
//! Every randomized computation draws from a ChaCha8 generator addressed by a
//! `(seed, stream)` pair. A replicate indexed `s` under master seed `m` always
//! reads stream `s` of the generator keyed by `m`, independently of how many
//! other replicates exist or which thread runs it. Serial and parallel
//! execution therefore see identical random numbers.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The generator used throughout the crate.
pub type Rng = ChaCha8Rng;

/// Generator for stream `stream` under `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A child seed for a nested level of replication (first word of the stream).
pub fn child_seed(seed: u64, stream: u64) -> u64 {
    stream_rng(seed, stream).next_u64()
}

/// Whether replicate loops fan out over the rayon pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}
