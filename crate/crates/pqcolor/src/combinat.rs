//! Bit-vector vertex encoding and rank/unrank plumbing.
//!
//! Vertices of the pair coloring are 0/1 vectors of length `m` with exactly
//! `t` ones, ordered by the integer they represent in binary (position 1 is
//! the most significant bit). `rank`/`unrank` identify the integers
//! `0..C(m,t)` with those vectors in that order. The module also carries the
//! colexicographic k-subset rank/unrank used to partition enumeration work
//! into contiguous integer ranges.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Exact binomial coefficient as `u64`, erroring instead of overflowing.
pub fn choose(m: u64, t: u64) -> Result<u64> {
    if t > m {
        return Ok(0);
    }
    let t = t.min(m - t);
    let mut acc: u128 = 1;
    for i in 1..=t {
        acc = acc
            .checked_mul((m - t + i) as u128)
            .ok_or(Error::Overflow { m, t })?;
        acc /= i as u128;
    }
    u64::try_from(acc).map_err(|_| Error::Overflow { m, t })
}

/// Binomial coefficient in `u128`, for subset-rank spaces that exceed `u64`
/// (e.g. C(65536, 5)). Errors on overflow.
pub fn choose_u128(n: u128, k: u64) -> Result<u128> {
    if (k as u128) > n {
        return Ok(0);
    }
    let k = (k as u128).min(n - k as u128) as u64;
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc.checked_mul(n - k as u128 + i).ok_or(Error::Overflow {
            m: u64::MAX,
            t: k,
        })?;
        acc /= i;
    }
    Ok(acc)
}

/// A 0/1 vector of length `m` with exactly `t` ones, a vertex of the pair
/// coloring. Backed by a single machine word, so `m <= 64`.
///
/// Position `i` (1-based, 1 = most significant) is bit `m - i` of `word`.
/// Comparing two vectors of equal shape compares the integers they
/// represent in binary.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
#[allow(clippy::len_without_is_empty)] // length is always >= 2
pub struct VertexVec {
    word: u64,
    m: u8,
    t: u8,
}

impl VertexVec {
    pub const MAX_LEN: u8 = 64;

    pub fn new(word: u64, m: u8, t: u8) -> Result<Self> {
        if m == 0 || m > Self::MAX_LEN {
            return Err(Error::Range(format!("vector length m={m} not in 1..=64")));
        }
        if t == 0 || t >= m {
            return Err(Error::Range(format!("weight t={t} not in 1..m={m}")));
        }
        if m < 64 && word >> m != 0 {
            return Err(Error::Range(format!(
                "word {word:#x} has bits above length m={m}"
            )));
        }
        if word.count_ones() != t as u32 {
            return Err(Error::Range(format!(
                "word {word:#x} has weight {}, expected t={t}",
                word.count_ones()
            )));
        }
        Ok(Self { word, m, t })
    }

    pub fn word(&self) -> u64 {
        self.word
    }

    pub fn len(&self) -> u8 {
        self.m
    }

    pub fn weight(&self) -> u8 {
        self.t
    }

    /// Bit at 1-based position `i` (position 1 is most significant).
    pub fn bit(&self, i: u8) -> u8 {
        debug_assert!(i >= 1 && i <= self.m);
        ((self.word >> (self.m - i)) & 1) as u8
    }

    /// Support as a mask with bit `i-1` set iff position `i` carries a 1.
    /// This is the word with its `m` low bits reversed, which keeps
    /// position-set operations independent of `m`.
    pub fn support_mask(&self) -> u64 {
        self.word.reverse_bits() >> (64 - self.m)
    }

    /// 1-based positions of the ones, ascending.
    pub fn support(&self) -> Vec<u8> {
        (1..=self.m).filter(|&i| self.bit(i) == 1).collect()
    }

    /// Binary-integer comparison; errors if the shapes differ.
    pub fn compare(&self, other: &VertexVec) -> Result<Ordering> {
        if self.m != other.m || self.t != other.t {
            return Err(Error::Dimension(format!(
                "cannot compare ({}, {}) vector with ({}, {}) vector",
                self.m, self.t, other.m, other.t
            )));
        }
        Ok(self.word.cmp(&other.word))
    }

    /// Rank of this vector among all weight-t length-m vectors in binary
    /// order. Inverse of [`unrank`].
    pub fn rank(&self) -> u64 {
        // Increasing word order is colex order on the sets of 0-based bit
        // indices, so the rank is the combinadic sum C(b_i, i).
        let mut r: u64 = 0;
        let mut word = self.word;
        let mut i = 1u64;
        while word != 0 {
            let b = word.trailing_zeros() as u64;
            r += choose(b, i).expect("within C(64,32)");
            word &= word - 1;
            i += 1;
        }
        r
    }
}

/// The `(r+1)`-th weight-`t` vector of length `m` in binary-integer order.
pub fn unrank(r: u64, m: u8, t: u8) -> Result<VertexVec> {
    if m == 0 || m > VertexVec::MAX_LEN || t == 0 || t >= m {
        return Err(Error::Range(format!("bad shape m={m}, t={t}")));
    }
    let total = choose(m as u64, t as u64)?;
    if r >= total {
        return Err(Error::Range(format!(
            "rank {r} out of range for C({m},{t}) = {total}"
        )));
    }
    let mut word = 0u64;
    let mut r = r;
    for i in (1..=t as u64).rev() {
        // Largest b with C(b, i) <= r picks the i-th highest bit index.
        let mut b = i - 1;
        while choose(b + 1, i).is_ok_and(|c| c <= r) {
            b += 1;
        }
        r -= choose(b, i).expect("monotone search stays in range");
        word |= 1u64 << b;
    }
    VertexVec::new(word, m, t)
}

impl fmt::Display for VertexVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.m {
            write!(f, "{}", self.bit(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for VertexVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for VertexVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let m = s.len() as u8;
        let mut word = 0u64;
        for c in s.chars() {
            word <<= 1;
            match c {
                '0' => {}
                '1' => word |= 1,
                _ => return Err(Error::Range(format!("bad bit character {c:?}"))),
            }
        }
        VertexVec::new(word, m, word.count_ones() as u8)
    }
}

/// Number of k-subsets of an n-set, in `u128`.
pub fn count_subsets(n: u64, k: u64) -> Result<u128> {
    choose_u128(n as u128, k)
}

/// Colex rank of a strictly increasing subset of 0-based elements.
pub fn colex_rank(elems: &[u64]) -> u128 {
    let mut r: u128 = 0;
    for (i, &a) in elems.iter().enumerate() {
        r += choose_u128(a as u128, i as u64 + 1).expect("rank fits u128");
    }
    r
}

/// The k-subset of `[0, n)` with the given colex rank.
pub fn colex_unrank(rank: u128, k: usize, n: u64) -> Result<Vec<u64>> {
    let total = count_subsets(n, k as u64)?;
    if rank >= total {
        return Err(Error::Range(format!(
            "colex rank {rank} out of range for C({n},{k}) = {total}"
        )));
    }
    let mut out = vec![0u64; k];
    let mut r = rank;
    let mut hi = n;
    for i in (1..=k).rev() {
        // Largest a < hi with C(a, i) <= r, found by binary search.
        let (mut lo_a, mut hi_a) = (i as u64 - 1, hi - 1);
        while lo_a < hi_a {
            let mid = (lo_a + hi_a).div_ceil(2);
            if choose_u128(mid as u128, i as u64)? <= r {
                lo_a = mid;
            } else {
                hi_a = mid - 1;
            }
        }
        out[i - 1] = lo_a;
        r -= choose_u128(lo_a as u128, i as u64)?;
        hi = lo_a;
    }
    Ok(out)
}

/// Advance a strictly increasing k-subset of `[0, n)` to its colex
/// successor in place. Returns false (leaving the slice unchanged) when the
/// input is the colex maximum.
pub fn colex_next(elems: &mut [u64], n: u64) -> bool {
    let k = elems.len();
    for i in 0..k {
        let cap = if i + 1 < k { elems[i + 1] } else { n };
        if elems[i] + 1 < cap {
            elems[i] += 1;
            for (j, e) in elems.iter_mut().enumerate().take(i) {
                *e = j as u64;
            }
            return true;
        }
    }
    false
}
