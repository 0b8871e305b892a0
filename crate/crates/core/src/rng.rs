//! Seeded randomness.
//!
//! Every random draw in the crate comes from ChaCha20 (`rand_chacha::ChaCha20Rng`)
//! seeded through `SeedableRng::seed_from_u64`, so a given `u64` seed yields the
//! same stream on every platform. Derived seeds for independent streams are
//! produced with the SplitMix64 finalizer.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub type SeededRng = ChaCha20Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds a sequence of words into one seed. Order-sensitive.
pub fn mix_seed(words: &[u64]) -> u64 {
    words.iter().fold(0x6A09_E667_F3BC_C908, |acc, &w| {
        splitmix64(acc ^ splitmix64(w))
    })
}
