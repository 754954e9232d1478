//! Counter-based seed derivation.
//!
//! Every random decision in the simulator is a pure function of a 64-bit
//! master seed plus a path of integer tags (trial index, ladder step,
//! purpose code). Distinct paths give independent-looking streams, so
//! trials can run in any order or in parallel and still reproduce.

use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;

/// Purpose codes keeping the per-step streams disjoint.
pub mod tag {
    pub const MATRIX: u64 = 1;
    pub const SWAP: u64 = 2;
    pub const JL: u64 = 3;
    pub const INPUT: u64 = 4;
    pub const ORACLE: u64 = 5;
    pub const TRIAL: u64 = 6;
}

fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Mixes a master seed with a tag path into a derived 64-bit seed.
pub fn derive(master: u64, path: &[u64]) -> u64 {
    let mut acc = splitmix64(master);
    for &t in path {
        acc = splitmix64(acc ^ t.wrapping_mul(0xd1342543de82ef95));
    }
    acc
}

/// Deterministic stream for a derived seed.
pub fn stream(master: u64, path: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive(master, path))
}
