//! Seed derivation and the seeded shuffle.
//!
//! Every random stream in the crate is a ChaCha8 generator
//! (`rand_chacha::ChaCha8Rng::seed_from_u64`), read through `next_u64`.
//! Derived seeds use the SplitMix64 finaliser, which is a bijection on u64.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Salt mixed into a trial seed to obtain its partition seed.
pub const PARTITION_SALT: u64 = 0x5041_5254_4954_494F; // "PARTITIO"

/// The SplitMix64 output function.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` under `master`:
/// `mix64(master + GOLDEN_GAMMA * (index + 1))` with wrapping arithmetic.
///
/// For a fixed master the map is injective in `index` (odd multiplier, then a
/// bijection), so trial seeds never collide.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    mix64(master.wrapping_add(GOLDEN_GAMMA.wrapping_mul(index.wrapping_add(1))))
}

/// Partition seed paired with a graph seed: `mix64(seed ^ PARTITION_SALT)`.
pub fn partition_seed(graph_seed: u64) -> u64 {
    mix64(graph_seed ^ PARTITION_SALT)
}

pub(crate) fn stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform index in `0..bound` from one 64-bit draw via the widening multiply
/// `(x * bound) >> 64`.
pub(crate) fn below(rng: &mut ChaCha8Rng, bound: usize) -> usize {
    ((rng.next_u64() as u128 * bound as u128) >> 64) as usize
}

/// Fisher–Yates shuffle of `0..n`: for `i` from `n-1` down to `1`, swap
/// position `i` with `below(i + 1)`.
pub fn shuffled_range(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = stream(seed);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = below(&mut rng, i + 1);
        order.swap(i, j);
    }
    order
}
