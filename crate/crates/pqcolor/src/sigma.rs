//! The 4-coordinate edge coloring of K_n on weight-t bit vectors.
//!
//! Vertices are the weight-t 0/1 vectors of length m in binary order. For
//! an ordered pair v < w with supports S, T the color is
//!
//! ```text
//! (c1, c2, c3, c4) =
//!   (min{i : v(i)=0, w(i)=1},
//!    min{j : j > c1, v(j)=1, w(j)=0},
//!    f_S(S ∩ T),
//!    f_T(S ∩ T))
//! ```
//!
//! where `f_B` is a fixed bijection from subsets of B to `1..=2^|B|`. When
//! the requested n is not a binomial coefficient, the coloring is built on
//! the smallest n' = C(m,t) >= n and restricted to the first n vertices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinat::{choose, unrank, VertexVec};
use crate::verify::ColoringSource;
use crate::{Error, Result};

/// Instance parameters: the requested vertex count and the (t, m) shape of
/// the covering binomial instance n' = C(m, t) >= n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaParams {
    pub n_requested: u64,
    pub t: u8,
    pub m: u8,
    pub n_prime: u64,
}

/// Largest weight the packed color representation supports; the parameter
/// search never selects t above m/2 <= 32, so this is not a real limit.
const MAX_WEIGHT: u8 = 55;

impl SigmaParams {
    /// Choose (t, m) minimizing the palette upper bound m^2 * 4^t subject to
    /// C(m, t) >= n, with m minimal for each t. Ties prefer smaller t, then
    /// smaller m. Deterministic.
    pub fn select(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter(format!("need n >= 2, got {n}")));
        }
        let mut best: Option<SigmaParams> = None;
        // Any feasible t > m/2 is dominated by m - t at the same m, so
        // scanning t <= 32 covers every candidate that can win.
        for t in 1..=32u8 {
            let Some(params) = Self::minimal_m(n, t)? else {
                continue;
            };
            let better = match &best {
                None => true,
                Some(b) => {
                    let (pb, bb) = (params.bound(), b.bound());
                    pb < bb || (pb == bb && (params.t, params.m) < (b.t, b.m))
                }
            };
            if better {
                best = Some(params);
            }
        }
        best.ok_or_else(|| {
            Error::Capacity(format!(
                "no (m, t) with m <= {} satisfies C(m, t) >= {n}",
                VertexVec::MAX_LEN
            ))
        })
    }

    /// Parameters with a forced weight t and minimal covering m.
    pub fn with_weight(n: u64, t: u8) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter(format!("need n >= 2, got {n}")));
        }
        if t == 0 || t > MAX_WEIGHT {
            return Err(Error::Parameter(format!("weight t={t} not in 1..={MAX_WEIGHT}")));
        }
        Self::minimal_m(n, t)?.ok_or_else(|| {
            Error::Capacity(format!(
                "C(m, {t}) < {n} for every m <= {}",
                VertexVec::MAX_LEN
            ))
        })
    }

    /// The full binomial instance on exactly C(m, t) vertices.
    pub fn from_shape(m: u8, t: u8) -> Result<Self> {
        if t == 0 || t >= m || m > VertexVec::MAX_LEN || t > MAX_WEIGHT {
            return Err(Error::Parameter(format!("bad shape m={m}, t={t}")));
        }
        let n = choose(m as u64, t as u64)?;
        Ok(Self {
            n_requested: n,
            t,
            m,
            n_prime: n,
        })
    }

    fn minimal_m(n: u64, t: u8) -> Result<Option<Self>> {
        for m in (t + 1)..=VertexVec::MAX_LEN {
            match choose(m as u64, t as u64) {
                Ok(c) if c >= n => {
                    return Ok(Some(Self {
                        n_requested: n,
                        t,
                        m,
                        n_prime: c,
                    }))
                }
                Ok(_) => {}
                Err(Error::Overflow { .. }) => {
                    // C(m, t) already exceeds u64 and therefore n.
                    return Err(Error::Capacity(format!(
                        "C({m}, {t}) exceeds u64; instance too large"
                    )));
                }
                Err(e) => return Err(e),
            }
        }
        Ok(None)
    }

    /// Analytic palette upper bound m^2 * 4^t.
    pub fn bound(&self) -> u128 {
        (self.m as u128) * (self.m as u128) * (1u128 << (2 * self.t as u32))
    }

    /// The vertex with 1-based label `i` (the i-th smallest weight-t vector).
    pub fn vertex(&self, i: u64) -> Result<VertexVec> {
        if i < 1 || i > self.n_prime {
            return Err(Error::Range(format!(
                "vertex label {i} not in 1..={}",
                self.n_prime
            )));
        }
        unrank(i - 1, self.m, self.t)
    }
}

/// A color of the pair coloring: positions c1 < c2 in `[m]` and the two
/// bijection values c3, c4 in `[2^t]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SigmaColor {
    pub c1: u8,
    pub c2: u8,
    pub c3: u64,
    pub c4: u64,
}

impl SigmaColor {
    /// Injective packing into an opaque 128-bit color key.
    /// Layout: c1 in bits 120.., c2 in bits 112.., c3 in bits 56.., c4 low.
    pub fn key(&self) -> u128 {
        debug_assert!(self.c3 < 1 << 56 && self.c4 < 1 << 56);
        ((self.c1 as u128) << 120)
            | ((self.c2 as u128) << 112)
            | ((self.c3 as u128) << 56)
            | self.c4 as u128
    }

    pub fn from_key(key: u128) -> Self {
        Self {
            c1: (key >> 120) as u8,
            c2: (key >> 112) as u8,
            c3: ((key >> 56) & ((1 << 56) - 1)) as u64,
            c4: (key & ((1 << 56) - 1)) as u64,
        }
    }
}

impl fmt::Display for SigmaColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.c1, self.c2, self.c3, self.c4)
    }
}

impl fmt::Debug for SigmaColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The fixed bijection from subsets of B to `1..=2^|B|`: with B sorted
/// ascending as b_1 < ... < b_t, a subset A maps to 1 + sum of 2^(k-1) over
/// the k with b_k in A. Masks use bit i-1 for position i, so this is
/// 1 + pext(a, b).
pub fn f_b(b_mask: u64, a_mask: u64) -> Result<u64> {
    if a_mask & !b_mask != 0 {
        return Err(Error::Domain(format!(
            "subset {a_mask:#x} not contained in base set {b_mask:#x}"
        )));
    }
    Ok(1 + pext(a_mask, b_mask))
}

/// Software parallel-bit-extract: gather the bits of `a` at the set
/// positions of `mask`, packed toward bit 0 in ascending position order.
fn pext(a: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut k = 0u32;
    let mut rest = mask;
    while rest != 0 {
        let low = rest & rest.wrapping_neg();
        if a & low != 0 {
            out |= 1 << k;
        }
        k += 1;
        rest ^= low;
    }
    out
}

/// Color of the ordered pair v < w.
pub fn sigma_color(v: &VertexVec, w: &VertexVec) -> Result<SigmaColor> {
    match v.compare(w)? {
        std::cmp::Ordering::Less => {}
        std::cmp::Ordering::Equal => {
            return Err(Error::Degenerate(format!("sigma({v}, {w}) on equal vertices")))
        }
        std::cmp::Ordering::Greater => {
            return Err(Error::Order(format!("sigma requires v < w, got {v} > {w}")))
        }
    }
    let m = v.len();
    // Positions where w has 1 and v has 0; the most significant is c1.
    let gains = !v.word() & w.word() & mask_low(m);
    debug_assert!(gains != 0);
    let c1_bit = 63 - gains.leading_zeros() as u8;
    let c1 = m - c1_bit;
    // Positions j > c1 where v has 1 and w has 0; equal weights guarantee
    // one exists.
    let losses = v.word() & !w.word() & mask_low(c1_bit);
    assert!(losses != 0, "c2 undefined for {v} < {w}; weights must differ");
    let c2_bit = 63 - losses.leading_zeros() as u8;
    let c2 = m - c2_bit;
    let (s, t) = (v.support_mask(), w.support_mask());
    let st = s & t;
    Ok(SigmaColor {
        c1,
        c2,
        c3: f_b(s, st)?,
        c4: f_b(t, st)?,
    })
}

fn mask_low(bits: u8) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Color of the edge between 1-based vertex labels i and j; the pair is
/// canonicalized, so the color is symmetric in the unordered pair.
pub fn sigma_edge(i: u64, j: u64, params: &SigmaParams) -> Result<SigmaColor> {
    if i == j {
        return Err(Error::Degenerate(format!("edge ({i}, {j}) is a loop")));
    }
    let (lo, hi) = (i.min(j), i.max(j));
    if lo < 1 || hi > params.n_requested {
        return Err(Error::Range(format!(
            "edge ({i}, {j}) outside 1..={}",
            params.n_requested
        )));
    }
    sigma_color(&params.vertex(lo)?, &params.vertex(hi)?)
}

/// Number of distinct colors realized over all edges of K_{n_requested}.
pub fn sigma_palette(params: &SigmaParams) -> Result<u64> {
    Ok(SigmaColoring::new(*params)?.palette_size())
}

/// A materialized coloring instance: unranked vertex words plus, for
/// moderate n, a dense pair-color matrix.
pub struct SigmaColoring {
    params: SigmaParams,
    vertices: Vec<VertexVec>,
    /// Row-major upper-triangle matrix of packed colors, when n is small
    /// enough to afford n^2 entries.
    matrix: Option<Vec<u128>>,
}

/// Above this vertex count the dense matrix would exceed ~64 MiB and pairs
/// are colored on the fly instead.
const MATRIX_LIMIT: u64 = 2048;

impl SigmaColoring {
    pub fn new(params: SigmaParams) -> Result<Self> {
        Self::with_vertex_count(params, None)
    }

    /// Build over the full covering instance (all n' vertices) instead of
    /// the restriction to n_requested.
    pub fn full(params: SigmaParams) -> Result<Self> {
        let n = params.n_prime;
        Self::with_vertex_count(params, Some(n))
    }

    fn with_vertex_count(params: SigmaParams, count: Option<u64>) -> Result<Self> {
        let n = count.unwrap_or(params.n_requested);
        if n > 1 << 24 {
            return Err(Error::Capacity(format!(
                "materializing {n} vertices is not supported"
            )));
        }
        let vertices: Vec<VertexVec> = (1..=n).map(|i| params.vertex(i)).collect::<Result<_>>()?;
        let mut coloring = Self {
            params,
            vertices,
            matrix: None,
        };
        if n <= MATRIX_LIMIT {
            let n = n as usize;
            let mut matrix = vec![0u128; n * n];
            for a in 0..n {
                for b in (a + 1)..n {
                    let key = sigma_color(&coloring.vertices[a], &coloring.vertices[b])?.key();
                    matrix[a * n + b] = key;
                    matrix[b * n + a] = key;
                }
            }
            coloring.matrix = Some(matrix);
        }
        Ok(coloring)
    }

    pub fn params(&self) -> &SigmaParams {
        &self.params
    }

    /// Packed color of the pair of 0-based vertex indices a != b.
    pub fn pair_key(&self, a: u64, b: u64) -> u128 {
        debug_assert!(a != b);
        if let Some(matrix) = &self.matrix {
            let n = self.vertices.len();
            return matrix[a as usize * n + b as usize];
        }
        let (lo, hi) = (a.min(b) as usize, a.max(b) as usize);
        sigma_color(&self.vertices[lo], &self.vertices[hi])
            .expect("vertices are distinct and ordered")
            .key()
    }

    pub fn palette_size(&self) -> u64 {
        use rayon::prelude::*;
        let n = self.vertices.len() as u64;
        let sets = (0..n)
            .into_par_iter()
            .map(|a| {
                let mut local = std::collections::HashSet::new();
                for b in (a + 1)..n {
                    local.insert(self.pair_key(a, b));
                }
                local
            })
            .reduce(std::collections::HashSet::new, |mut acc, s| {
                acc.extend(s);
                acc
            });
        sets.len() as u64
    }
}

impl ColoringSource for SigmaColoring {
    fn uniformity(&self) -> usize {
        2
    }

    fn n_vertices(&self) -> u64 {
        self.vertices.len() as u64
    }

    fn color_of(&self, edge: &[u64]) -> u128 {
        debug_assert_eq!(edge.len(), 2);
        self.pair_key(edge[0], edge[1])
    }
}
