//! Deterministic RNG derivation.
//!
//! Every sampling task owns an independent stream derived by hashing the
//! run seed together with a list of context tags (bipartition, tableaux,
//! sample index). Workers therefore never share RNG state and results do
//! not depend on scheduling.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Default seed used by the command line tools.
pub const DEFAULT_SEED: u64 = 0xE307C;

/// A ChaCha stream keyed by the seed and the context tags.
pub fn derive_rng(seed: u64, tags: &[&str]) -> ChaCha8Rng {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    for tag in tags {
        hasher.update([0u8]);
        hasher.update(tag.as_bytes());
    }
    let digest: [u8; 32] = hasher.finalize().into();
    ChaCha8Rng::from_seed(digest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_reproducible_and_tag_sensitive() {
        let mut a = derive_rng(7, &["x", "y"]);
        let mut b = derive_rng(7, &["x", "y"]);
        let mut c = derive_rng(7, &["xy"]);
        let va: u64 = a.gen();
        assert_eq!(va, b.gen::<u64>());
        assert_ne!(va, c.gen::<u64>());
    }
}
