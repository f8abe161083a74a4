//! Seed and stream derivation.
//!
//! Every random draw in the crate comes from a [`ChaCha8Rng`] that is keyed
//! by a 64-bit seed and positioned on a fixed stream number. A graph seed
//! feeds four streams:
//!
//! | stream | consumer                                               |
//! |--------|--------------------------------------------------------|
//! | 0      | node labels, one draw per node in ascending order      |
//! | 1      | short-range choices, `a` then `b` per node, ascending  |
//! | 2      | exact long-range generator, pairs `(u, v)` row-major   |
//! | 3      | poisson long-range generator event stream              |
//!
//! Labels and short-range links therefore do not depend on which long-range
//! generator is selected, so exact and poisson graphs built from the same
//! seed share their labels and ring structure.
//!
//! Experiments derive per-graph seeds with [`derive_seed`], a SplitMix64
//! chain over `(base_seed, cell, graph)`, and draw query pairs from
//! [`STREAM_PAIRS`] of the graph seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use rand_chacha::ChaCha8Rng as Rng;

pub const STREAM_LABELS: u64 = 0;
pub const STREAM_SHORT_RANGE: u64 = 1;
pub const STREAM_LONG_RANGE_EXACT: u64 = 2;
pub const STREAM_LONG_RANGE_POISSON: u64 = 3;
pub const STREAM_PAIRS: u64 = 4;
pub const STREAM_ESTIMATOR: u64 = 5;

/// Generator for `seed` positioned at the start of `stream`.
pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Pure seed derivation: `mix(mix(mix(base) ^ a) ^ b)`.
pub fn derive_seed(base: u64, a: u64, b: u64) -> u64 {
    mix64(mix64(mix64(base) ^ a) ^ b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;

    #[test]
    fn streams_are_independent_and_reproducible() {
        let a0 = stream(7, 0).next_u64();
        let a1 = stream(7, 1).next_u64();
        assert_ne!(a0, a1);
        assert_eq!(a0, stream(7, 0).next_u64());
    }

    #[test]
    fn derived_seeds_differ_by_coordinate() {
        assert_ne!(derive_seed(1, 0, 1), derive_seed(1, 1, 0));
        assert_eq!(derive_seed(1, 2, 3), derive_seed(1, 2, 3));
    }
}
