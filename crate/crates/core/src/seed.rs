//! Deriving independent RNG streams from one root seed.
//!
//! Components that consume randomness (GLEU sampling, comparison
//! shuffling) each get their own stream named by a label, so adding or
//! removing one consumer never perturbs the others.

/// Derives a stable sub-seed from a root seed and a label.
///
/// The label is hashed with FNV-1a, mixed into the root, and finished
/// with a SplitMix64 round so that related roots and labels still
/// produce well-separated streams.
pub fn sub_seed(root: u64, label: &str) -> u64 {
    const FNV_OFFSET: u64 = 0xcbf29ce484222325;
    const FNV_PRIME: u64 = 0x100000001b3;
    let mut hash = FNV_OFFSET;
    for byte in label.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(FNV_PRIME);
    }
    splitmix64(root ^ hash)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}
