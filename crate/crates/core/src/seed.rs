//! Deterministic RNG substreams.
//!
//! All randomness in the crate flows from a single 64-bit seed through named
//! substreams so parallel and serial runs agree: the replicate/fold/category
//! index selects the stream, not the order of execution. The mixing is a
//! fixed FNV-1a + SplitMix64 construction, stable across platforms and
//! releases.

use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h = FNV_OFFSET;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive the substream seed for (`seed`, `tag`, `index`).
pub fn substream_seed(seed: u64, tag: &str, index: u64) -> u64 {
    splitmix64(splitmix64(seed ^ fnv1a(tag.as_bytes())) ^ index)
}

/// RNG for the named substream.
pub fn substream(seed: u64, tag: &str, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(substream_seed(seed, tag, index))
}

/// In-place Fisher-Yates shuffle with a hand-rolled index walk so the
/// sequence of draws is pinned by this crate, not by a rand release.
pub fn shuffle<T>(items: &mut [T], rng: &mut ChaCha8Rng) {
    use rand::Rng;
    for i in (1..items.len()).rev() {
        let j = rng.random_range(0..=i);
        items.swap(i, j);
    }
}
