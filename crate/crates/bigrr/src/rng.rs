//! Deterministic stream derivation for reproducible parallel search.
//!
//! Every randomized trial gets its own [`ChaCha8Rng`] seeded from
//! `(master seed, stream id, trial index)`, so results are independent of
//! thread count and execution order.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 step: a cheap bijective mixer used for seed derivation and
/// for the table validator's triple sampling.
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// FNV-1a over bytes; used to hash pair labels into stream ids.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// RNG for one trial of one search stream. Distinct `(master, stream,
/// trial)` triples give independent generators.
pub fn trial_rng(master: u64, stream: u64, trial: u64) -> ChaCha8Rng {
    let a = splitmix64(master ^ stream.rotate_left(17));
    let b = splitmix64(a ^ trial.rotate_left(31));
    let c = splitmix64(b);
    let d = splitmix64(c);
    let mut seed = [0u8; 32];
    seed[..8].copy_from_slice(&a.to_le_bytes());
    seed[8..16].copy_from_slice(&b.to_le_bytes());
    seed[16..24].copy_from_slice(&c.to_le_bytes());
    seed[24..].copy_from_slice(&d.to_le_bytes());
    ChaCha8Rng::from_seed(seed)
}
