//! Seeded random chains for property checks.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::word::Word;
use crate::zchain::ZChain;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A word over `r` letters supported in `[lo, hi]`; each position is
/// non-trivial with probability 1/2.
pub fn random_word<R: Rng>(rng: &mut R, r: usize, lo: i64, hi: i64) -> Word {
    Word::from_entries((lo..=hi).filter_map(|p| {
        if rng.gen_bool(0.5) {
            Some((p, rng.gen_range(1..r as u32)))
        } else {
            None
        }
    }))
}

/// Up to `max_terms` words inside `[lo, hi]` with coefficients in `[-9, 9]`.
pub fn random_chain_between<R: Rng>(
    rng: &mut R,
    r: usize,
    lo: i64,
    hi: i64,
    max_terms: usize,
) -> ZChain {
    let terms = rng.gen_range(0..=max_terms);
    (0..terms)
        .map(|_| {
            // random sub-intervals keep short words common
            let a = rng.gen_range(lo..=hi);
            let b = rng.gen_range(a..=hi);
            (
                random_word(rng, r, a, b),
                BigInt::from(rng.gen_range(-9i64..=9)),
            )
        })
        .collect()
}

/// Chain with support in `[-window, window]`.
pub fn random_chain<R: Rng>(rng: &mut R, r: usize, window: i64, max_terms: usize) -> ZChain {
    random_chain_between(rng, r, -window, window, max_terms)
}
