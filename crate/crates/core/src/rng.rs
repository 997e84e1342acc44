//! Seeded randomness. Every random choice in the crate goes through here so
//! that a `(seed, input)` pair always reproduces the same output.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
