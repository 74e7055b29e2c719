//! Seeded counter-based sampling.
//!
//! Subset samples are drawn from a stateless 64-bit generator so that a
//! (seed, counter) pair always yields the same value, on any thread, in any
//! implementation. The generator is the splitmix64 finalizer applied to
//! `seed + counter * 0x9E3779B97F4A7C15`; 128-bit subset ranks concatenate
//! the outputs at counters 2i and 2i+1 and reduce modulo the rank-space
//! size, discarding duplicates. The exact algorithm is documented in the
//! repository README so other implementations can reproduce the samples.

use std::collections::HashSet;

use crate::{Error, Result};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// Value of the counter-based generator at (seed, counter).
pub fn mix64(seed: u64, counter: u64) -> u64 {
    let mut z = seed.wrapping_add(counter.wrapping_mul(GOLDEN));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// 128-bit draw i: high word from counter 2i, low word from counter 2i+1.
pub fn draw128(seed: u64, i: u64) -> u128 {
    ((mix64(seed, 2 * i) as u128) << 64) | mix64(seed, 2 * i + 1) as u128
}

/// The first `count` distinct values of `draw128(seed, i) % modulus`,
/// in draw order.
pub fn sample_distinct_ranks(seed: u64, count: u64, modulus: u128) -> Result<Vec<u128>> {
    if modulus == 0 {
        return Err(Error::Parameter("empty rank space".into()));
    }
    if count as u128 > modulus {
        return Err(Error::Parameter(format!(
            "cannot draw {count} distinct ranks from a space of {modulus}"
        )));
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut seen = HashSet::with_capacity(count as usize);
    let mut i = 0u64;
    while out.len() < count as usize {
        let r = draw128(seed, i) % modulus;
        if seen.insert(r) {
            out.push(r);
        }
        i += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_seed_is_reproducible() {
        let a = sample_distinct_ranks(7, 1000, 1 << 40).unwrap();
        let b = sample_distinct_ranks(7, 1000, 1 << 40).unwrap();
        assert_eq!(a, b);
        let c = sample_distinct_ranks(8, 1000, 1 << 40).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn ranks_are_distinct_and_in_range() {
        let modulus = 977u128; // force collisions
        let ranks = sample_distinct_ranks(3, 977, modulus).unwrap();
        assert_eq!(ranks.len(), 977);
        let set: HashSet<_> = ranks.iter().collect();
        assert_eq!(set.len(), 977);
        assert!(ranks.iter().all(|&r| r < modulus));
    }

    #[test]
    fn oversampling_is_rejected() {
        assert!(matches!(
            sample_distinct_ranks(1, 11, 10),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn generator_fixture() {
        // Frozen values pin the generator definition; a change here breaks
        // cross-run reproducibility of sampled verification.
        assert_eq!(mix64(0, 0), 0);
        assert_eq!(mix64(7, 0), 0x12AE_3023_7B17_DF14);
        assert_eq!(mix64(7, 1), 0x63CB_E1E4_5932_0DD7);
    }
}
