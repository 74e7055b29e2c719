//! Stepping-up lift: from the pair coloring of K_n to a triple coloring of
//! the complete 3-graph on {0,1}^n.
//!
//! Vertices are integers 0..2^n in binary order; coordinate i of a vertex
//! is bit n-i of its value (coordinate 1 most significant). For x != y,
//! `gamma(x, y)` is the first coordinate where they differ. A sorted triple
//! u < v < w is colored by the pair color of {gamma(u,v), gamma(v,w)}
//! together with the orientation sign delta = +1 iff gamma(u,v) < gamma(v,w).
//!
//! Vertex counts that are not powers of two are handled by coloring the
//! smallest covering power of two and restricting.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::sigma::{sigma_edge, SigmaColor, SigmaColoring, SigmaParams};
use crate::verify::ColoringSource;
use crate::{Error, Result};

/// Bit length for a vertex count: the exponent of the smallest power of two
/// that is >= the count.
pub fn lift_size(n_vertices: u64) -> Result<u8> {
    if n_vertices < 2 {
        return Err(Error::Parameter(format!(
            "need at least 2 vertices, got {n_vertices}"
        )));
    }
    Ok((64 - (n_vertices - 1).leading_zeros()) as u8)
}

fn check_vertex(x: u64, n: u8) -> Result<()> {
    if n == 0 || n > 64 {
        return Err(Error::Parameter(format!("bit length {n} not in 1..=64")));
    }
    if n < 64 && x >> n != 0 {
        return Err(Error::Range(format!("vertex {x} does not fit in {n} bits")));
    }
    Ok(())
}

/// First coordinate (1-based, most significant first) where x and y differ.
pub fn gamma(x: u64, y: u64, n: u8) -> Result<u8> {
    check_vertex(x, n)?;
    check_vertex(y, n)?;
    if x == y {
        return Err(Error::Degenerate(format!("gamma({x}, {x}) is undefined")));
    }
    let diff = x ^ y;
    Ok(n - (63 - diff.leading_zeros() as u8))
}

/// Orientation of a sorted triple: +1 iff gamma(x,y) < gamma(y,z). The two
/// gammas are never equal for x < y < z, so -1 means strictly greater.
pub fn delta(x: u64, y: u64, z: u64, n: u8) -> Result<i8> {
    if !(x < y && y < z) {
        return Err(Error::Order(format!("need x < y < z, got ({x}, {y}, {z})")));
    }
    let a = gamma(x, y, n)?;
    let b = gamma(y, z, n)?;
    debug_assert_ne!(a, b, "adjacent gammas coincide for {x} < {y} < {z}");
    Ok(if a < b { 1 } else { -1 })
}

/// A color of the lifted coloring: a pair color plus the orientation sign.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChiColor {
    pub base: SigmaColor,
    pub delta: i8,
}

impl ChiColor {
    pub fn key(&self) -> u128 {
        (self.base.key() << 1) | (self.delta == 1) as u128
    }

    pub fn from_key(key: u128) -> Self {
        Self {
            base: SigmaColor::from_key(key >> 1),
            delta: if key & 1 == 1 { 1 } else { -1 },
        }
    }
}

impl fmt::Display for ChiColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}|{}",
            self.base,
            if self.delta == 1 { "+1" } else { "-1" }
        )
    }
}

impl fmt::Debug for ChiColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Color of the sorted triple u < v < w on {0,1}^n. The two gammas are fed
/// to the pair coloring in ascending order; the sign alone records which
/// was larger. `params` must cover K_n, i.e. n_requested >= n.
pub fn chi_color(u: u64, v: u64, w: u64, n: u8, params: &SigmaParams) -> Result<ChiColor> {
    if !(u < v && v < w) {
        return Err(Error::Order(format!("need u < v < w, got ({u}, {v}, {w})")));
    }
    check_vertex(w, n)?;
    if (params.n_requested as u128) < n as u128 {
        return Err(Error::Capacity(format!(
            "pair coloring on {} vertices cannot host coordinates up to {n}",
            params.n_requested
        )));
    }
    let a = gamma(u, v, n)?;
    let b = gamma(v, w, n)?;
    debug_assert_ne!(a, b);
    let base = sigma_edge(a.min(b) as u64, a.max(b) as u64, params)?;
    Ok(ChiColor {
        base,
        delta: if a < b { 1 } else { -1 },
    })
}

/// A materialized lifted coloring on vertices 0..n_vertices of {0,1}^n,
/// with the underlying pair colors cached in a dense K_n matrix.
pub struct ChiColoring {
    n: u8,
    n_vertices: u64,
    sigma: SigmaColoring,
    params: SigmaParams,
}

impl ChiColoring {
    pub fn new(n_vertices: u64) -> Result<Self> {
        let n = lift_size(n_vertices)?;
        // K_n needs at least two vertices; n = 1 only arises for
        // n_vertices = 2, where no triple ever queries the pair coloring.
        let params = SigmaParams::select(n.max(2) as u64)?;
        Self::with_params(n_vertices, params)
    }

    pub fn with_params(n_vertices: u64, params: SigmaParams) -> Result<Self> {
        let n = lift_size(n_vertices)?;
        if (params.n_requested as u128) < n as u128 {
            return Err(Error::Capacity(format!(
                "pair coloring on {} vertices cannot host coordinates up to {n}",
                params.n_requested
            )));
        }
        let sigma = SigmaColoring::new(params)?;
        Ok(Self {
            n,
            n_vertices,
            sigma,
            params,
        })
    }

    pub fn bit_length(&self) -> u8 {
        self.n
    }

    pub fn params(&self) -> &SigmaParams {
        &self.params
    }

    /// Packed color of the sorted triple of 0-based vertex values.
    pub fn triple_key(&self, u: u64, v: u64, w: u64) -> u128 {
        debug_assert!(u < v && v < w && w < self.n_vertices);
        let a = self.n - (63 - (u ^ v).leading_zeros() as u8);
        let b = self.n - (63 - (v ^ w).leading_zeros() as u8);
        debug_assert_ne!(a, b);
        let base = self
            .sigma
            .pair_key(a.min(b) as u64 - 1, a.max(b) as u64 - 1);
        (base << 1) | (a < b) as u128
    }

    /// Distinct colors over all triples, by exhaustive enumeration.
    /// Feasible only for small vertex counts.
    pub fn palette_by_triples(&self) -> Result<u64> {
        let n = self.n_vertices;
        if n > 512 {
            return Err(Error::Capacity(format!(
                "triple enumeration over {n} vertices is not supported"
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for u in 0..n {
            for v in (u + 1)..n {
                for w in (v + 1)..n {
                    seen.insert(self.triple_key(u, v, w));
                }
            }
        }
        Ok(seen.len() as u64)
    }
}

impl ColoringSource for ChiColoring {
    fn uniformity(&self) -> usize {
        3
    }

    fn n_vertices(&self) -> u64 {
        self.n_vertices
    }

    fn color_of(&self, edge: &[u64]) -> u128 {
        debug_assert_eq!(edge.len(), 3);
        self.triple_key(edge[0], edge[1], edge[2])
    }
}

/// Exact palette size of the lifted coloring on the full 2^n vertex set,
/// counted at the pair level: every gamma pair and both signs are realized,
/// so the palette is exactly twice the pair-coloring palette. Triples are
/// never enumerated, which keeps this feasible for n up to 64.
pub fn chi_palette_paircount(n: u8) -> Result<u64> {
    if n < 2 {
        return Err(Error::Parameter(format!("need bit length >= 2, got {n}")));
    }
    let params = SigmaParams::select(n as u64)?;
    Ok(2 * crate::sigma::sigma_palette(&params)?)
}

/// One row of the palette-growth table.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthRow {
    pub n: u8,
    pub n_vertices: u128,
    pub sigma_palette: u64,
    pub chi_palette: u64,
    pub bound: u128,
    pub ratio: f64,
}

/// Growth-table row for N = 2^n: realized palettes, the analytic bound
/// 2 m^2 4^t, and the ratio of the realized triple palette to
/// exp(sqrt(ln ln N)).
pub fn growth_row(n: u8) -> Result<GrowthRow> {
    if !(2..=64).contains(&n) {
        return Err(Error::Parameter(format!("bit length {n} not in 2..=64")));
    }
    let params = SigmaParams::select(n as u64)?;
    let sigma_palette = crate::sigma::sigma_palette(&params)?;
    let chi_palette = 2 * sigma_palette;
    let n_vertices = 1u128 << n;
    let ln_ln = (n as f64 * std::f64::consts::LN_2).ln();
    let ratio = chi_palette as f64 / ln_ln.sqrt().exp();
    Ok(GrowthRow {
        n,
        n_vertices,
        sigma_palette,
        chi_palette,
        bound: 2 * params.bound(),
        ratio,
    })
}
