//! Generic (p,q) verification for complete 2- and 3-uniform hypergraph
//! colorings, plus exhaustive checkers for the structural facts the lifted
//! coloring rests on.
//!
//! A coloring passes at (p, q) when every p-vertex subset spans edges of at
//! least q distinct colors. Exhaustive mode walks all p-subsets in
//! colexicographic rank order, so the work splits into contiguous rank
//! ranges that merge associatively; the final report is identical for any
//! worker count. Sampled mode draws distinct subset ranks from the seeded
//! counter-based generator in `sample`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinat::{colex_next, colex_unrank, count_subsets};
use crate::sample::sample_distinct_ranks;
use crate::sigma::{sigma_color, SigmaParams};
use crate::{Error, Result};

/// A total, deterministic edge coloring of a complete k-graph. Colors are
/// opaque 128-bit keys compared only for equality. Implementations must be
/// safe to query from many threads at once.
pub trait ColoringSource: Sync {
    /// Edge size k (2 or 3).
    fn uniformity(&self) -> usize;
    fn n_vertices(&self) -> u64;
    /// Color of a sorted edge of 0-based vertex indices; `edge.len()` is k.
    fn color_of(&self, edge: &[u64]) -> u128;
}

/// Adaptor turning a closure into a coloring source.
pub struct FnColoring<F> {
    pub uniformity: usize,
    pub n_vertices: u64,
    pub f: F,
}

impl<F: Fn(&[u64]) -> u128 + Sync> ColoringSource for FnColoring<F> {
    fn uniformity(&self) -> usize {
        self.uniformity
    }

    fn n_vertices(&self) -> u64 {
        self.n_vertices
    }

    fn color_of(&self, edge: &[u64]) -> u128 {
        (self.f)(edge)
    }
}

/// How verify_pq enumerates p-subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { sample_size: u64, seed: u64 },
}

/// Mode echo in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ModeReport {
    Exhaustive,
    Sampled { sample_size: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

/// A violating p-subset: its 1-based vertex labels and the colors of its
/// internal edges in enumeration order, as indices into the report's
/// witness palette.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub subset: Vec<u64>,
    pub colors: Vec<u32>,
}

/// Outcome of a (p,q) check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub verdict: Verdict,
    pub uniformity: u32,
    pub n_vertices: u64,
    pub p: u32,
    pub q: u32,
    /// Number of p-subsets examined.
    pub checked: u64,
    /// Number of violating subsets found (witnesses are capped, this is not).
    pub violations: u64,
    /// Minimum distinct-color count over all examined subsets.
    pub min_colors_seen: u32,
    pub mode: ModeReport,
    /// Violating subsets, at most [`WITNESS_CAP`], in enumeration order.
    pub witnesses: Vec<Witness>,
    /// Color keys referenced by witnesses, interned in first-seen order.
    pub witness_palette: Vec<String>,
}

pub const WITNESS_CAP: usize = 100;

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

struct RawWitness {
    subset: Vec<u64>,
    colors: Vec<u128>,
}

struct Partial {
    checked: u64,
    violations: u64,
    min_colors: u32,
    witnesses: Vec<RawWitness>,
}

impl Partial {
    fn new() -> Self {
        Self {
            checked: 0,
            violations: 0,
            min_colors: u32::MAX,
            witnesses: Vec::new(),
        }
    }

    fn absorb(&mut self, other: Partial) {
        self.checked += other.checked;
        self.violations += other.violations;
        self.min_colors = self.min_colors.min(other.min_colors);
        for w in other.witnesses {
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(w);
            }
        }
    }
}

fn validate(src: &dyn ColoringSource, p: usize, q: usize) -> Result<()> {
    let k = src.uniformity();
    if k != 2 && k != 3 {
        return Err(Error::Parameter(format!("uniformity {k} not supported")));
    }
    if p < k {
        return Err(Error::Parameter(format!("p={p} smaller than uniformity {k}")));
    }
    if (p as u64) > src.n_vertices() {
        return Err(Error::Parameter(format!(
            "p={p} exceeds vertex count {}",
            src.n_vertices()
        )));
    }
    let edges_per_subset = count_subsets(p as u64, k as u64)?;
    if q < 1 || (q as u128) > edges_per_subset {
        return Err(Error::Parameter(format!(
            "q={q} not in 1..=C({p},{k}) = {edges_per_subset}"
        )));
    }
    Ok(())
}

/// Collect the colors of every k-edge inside `subset` into `buf`, in a
/// fixed nested-loop order.
fn subset_edge_colors(src: &dyn ColoringSource, subset: &[u64], buf: &mut Vec<u128>) {
    buf.clear();
    let p = subset.len();
    match src.uniformity() {
        2 => {
            for i in 0..p {
                for j in (i + 1)..p {
                    buf.push(src.color_of(&[subset[i], subset[j]]));
                }
            }
        }
        3 => {
            for i in 0..p {
                for j in (i + 1)..p {
                    for l in (j + 1)..p {
                        buf.push(src.color_of(&[subset[i], subset[j], subset[l]]));
                    }
                }
            }
        }
        _ => unreachable!("validated uniformity"),
    }
}

fn distinct_count(colors: &[u128], scratch: &mut Vec<u128>) -> u32 {
    scratch.clear();
    for &c in colors {
        if !scratch.contains(&c) {
            scratch.push(c);
        }
    }
    scratch.len() as u32
}

fn examine(
    src: &dyn ColoringSource,
    subset: &[u64],
    q: usize,
    acc: &mut Partial,
    buf: &mut Vec<u128>,
    scratch: &mut Vec<u128>,
) {
    subset_edge_colors(src, subset, buf);
    let d = distinct_count(buf, scratch);
    acc.checked += 1;
    acc.min_colors = acc.min_colors.min(d);
    if (d as usize) < q {
        acc.violations += 1;
        if acc.witnesses.len() < WITNESS_CAP {
            acc.witnesses.push(RawWitness {
                subset: subset.iter().map(|&v| v + 1).collect(),
                colors: buf.clone(),
            });
        }
    }
}

fn finalize(
    src: &dyn ColoringSource,
    p: usize,
    q: usize,
    mode: ModeReport,
    merged: Partial,
) -> VerifyReport {
    // Witness colors are interned in first-seen order over the witness
    // list, which is itself in enumeration order, so reports are identical
    // across worker counts and chunkings.
    let mut palette: Vec<String> = Vec::new();
    let mut ids = std::collections::HashMap::new();
    let witnesses = merged
        .witnesses
        .into_iter()
        .map(|w| Witness {
            subset: w.subset,
            colors: w
                .colors
                .into_iter()
                .map(|key| {
                    *ids.entry(key).or_insert_with(|| {
                        palette.push(key.to_string());
                        (palette.len() - 1) as u32
                    })
                })
                .collect(),
        })
        .collect::<Vec<_>>();
    VerifyReport {
        verdict: if witnesses.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        uniformity: src.uniformity() as u32,
        n_vertices: src.n_vertices(),
        p: p as u32,
        q: q as u32,
        checked: merged.checked,
        violations: merged.violations,
        min_colors_seen: merged.min_colors,
        mode,
        witnesses,
        witness_palette: palette,
    }
}

/// Verify that every p-subset (all of them, or a seeded sample) spans at
/// least q distinct edge colors. `workers` = 0 uses the global thread pool;
/// any positive value pins the worker count. The report is independent of
/// worker count and scheduling.
pub fn verify_pq(
    src: &dyn ColoringSource,
    p: usize,
    q: usize,
    mode: Mode,
    workers: usize,
) -> Result<VerifyReport> {
    validate(src, p, q)?;
    if workers == 0 {
        return verify_pq_inner(src, p, q, mode);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Parameter(format!("cannot build worker pool: {e}")))?;
    pool.install(|| verify_pq_inner(src, p, q, mode))
}

const CHUNK: u128 = 1 << 15;

fn verify_pq_inner(src: &dyn ColoringSource, p: usize, q: usize, mode: Mode) -> Result<VerifyReport> {
    let n = src.n_vertices();
    let total = count_subsets(n, p as u64)?;
    match mode {
        Mode::Exhaustive => {
            if total > u64::MAX as u128 {
                return Err(Error::Capacity(format!(
                    "exhaustive enumeration of {total} subsets is infeasible"
                )));
            }
            let chunks = total.div_ceil(CHUNK);
            let partials: Vec<Partial> = (0..chunks as u64)
                .into_par_iter()
                .map(|ci| {
                    let lo = ci as u128 * CHUNK;
                    let hi = ((ci as u128 + 1) * CHUNK).min(total);
                    examine_rank_range(src, p, q, lo, hi)
                })
                .collect::<Result<_>>()?;
            let mut merged = Partial::new();
            for part in partials {
                merged.absorb(part);
            }
            Ok(finalize(src, p, q, ModeReport::Exhaustive, merged))
        }
        Mode::Sampled { sample_size, seed } => {
            if sample_size == 0 {
                return Err(Error::Parameter("sample size must be positive".into()));
            }
            let ranks = sample_distinct_ranks(seed, sample_size, total)?;
            let partials: Vec<Partial> = ranks
                .par_chunks(CHUNK as usize)
                .map(|chunk| {
                    let mut acc = Partial::new();
                    let mut buf = Vec::new();
                    let mut scratch = Vec::new();
                    for &r in chunk {
                        let subset = colex_unrank(r, p, n)?;
                        examine(src, &subset, q, &mut acc, &mut buf, &mut scratch);
                    }
                    Ok(acc)
                })
                .collect::<Result<_>>()?;
            let mut merged = Partial::new();
            for part in partials {
                merged.absorb(part);
            }
            Ok(finalize(
                src,
                p,
                q,
                ModeReport::Sampled { sample_size, seed },
                merged,
            ))
        }
    }
}

/// Examine the subsets with colex ranks in `[lo, hi)`.
fn examine_rank_range(
    src: &dyn ColoringSource,
    p: usize,
    q: usize,
    lo: u128,
    hi: u128,
) -> Result<Partial> {
    let n = src.n_vertices();
    let mut acc = Partial::new();
    let mut buf = Vec::new();
    let mut scratch = Vec::new();
    if lo >= hi {
        return Ok(acc);
    }
    let mut subset = colex_unrank(lo, p, n)?;
    let mut r = lo;
    loop {
        examine(src, &subset, q, &mut acc, &mut buf, &mut scratch);
        r += 1;
        if r >= hi {
            break;
        }
        let advanced = colex_next(&mut subset, n);
        debug_assert!(advanced, "rank range exceeded the subset space");
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Structural property checkers for the pair coloring.

/// Dense symmetric table of pair-color keys over n vertices.
pub(crate) struct PairTable {
    n: usize,
    keys: Vec<u128>,
}

impl PairTable {
    #[cfg(test)]
    pub(crate) fn from_fn(n: usize, f: impl Fn(u64, u64) -> u128) -> Self {
        let mut keys = vec![0u128; n * n];
        for a in 0..n {
            for b in (a + 1)..n {
                let key = f(a as u64, b as u64);
                keys[a * n + b] = key;
                keys[b * n + a] = key;
            }
        }
        Self { n, keys }
    }

    fn from_params(params: &SigmaParams) -> Result<Self> {
        let n = params.n_prime;
        if n > 4096 {
            return Err(Error::Capacity(format!(
                "property checks over n' = {n} vertices are not supported"
            )));
        }
        let vertices: Vec<_> = (1..=n).map(|i| params.vertex(i)).collect::<Result<_>>()?;
        let n = n as usize;
        let mut keys = vec![0u128; n * n];
        for a in 0..n {
            for b in (a + 1)..n {
                let key = sigma_color(&vertices[a], &vertices[b])?.key();
                keys[a * n + b] = key;
                keys[b * n + a] = key;
            }
        }
        Ok(Self { n, keys })
    }

    #[inline]
    fn key(&self, a: usize, b: usize) -> u128 {
        self.keys[a * self.n + b]
    }
}

/// Result of one structural property check. Vertex labels are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropReport {
    pub checked: u64,
    pub counterexample: Option<Vec<u64>>,
}

impl PropReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Adjacent edges along the vertex order never repeat a color:
/// for all v < w < x, color(vw) != color(wx).
pub fn check_prop1(params: &SigmaParams) -> Result<PropReport> {
    Ok(prop1_over(&PairTable::from_params(params)?))
}

pub(crate) fn prop1_over(table: &PairTable) -> PropReport {
    let n = table.n;
    let mut checked = 0u64;
    for v in 0..n {
        for w in (v + 1)..n {
            let cvw = table.key(v, w);
            for x in (w + 1)..n {
                checked += 1;
                if cvw == table.key(w, x) {
                    return PropReport {
                        checked,
                        counterexample: Some(vec![v as u64 + 1, w as u64 + 1, x as u64 + 1]),
                    };
                }
            }
        }
    }
    PropReport {
        checked,
        counterexample: None,
    }
}

/// For v < w < min{x, y} with x != y: color(vw) = color(vx) forces
/// color(vy) != color(wx). Both relative orders of x and y are quantified.
pub fn check_prop2(params: &SigmaParams) -> Result<PropReport> {
    Ok(prop2_over(&PairTable::from_params(params)?))
}

pub(crate) fn prop2_over(table: &PairTable) -> PropReport {
    let n = table.n;
    let mut checked = 0u64;
    for v in 0..n {
        for w in (v + 1)..n {
            let cvw = table.key(v, w);
            for x in (w + 1)..n {
                if table.key(v, x) != cvw {
                    continue;
                }
                let cwx = table.key(w, x);
                for y in (w + 1)..n {
                    if y == x {
                        continue;
                    }
                    checked += 1;
                    if table.key(v, y) == cwx {
                        return PropReport {
                            checked,
                            counterexample: Some(vec![
                                v as u64 + 1,
                                w as u64 + 1,
                                x as u64 + 1,
                                y as u64 + 1,
                            ]),
                        };
                    }
                }
            }
        }
    }
    PropReport {
        checked,
        counterexample: None,
    }
}

/// For v < w < x < y: color(vw) = color(xy) forces color(vx) != color(vy).
pub fn check_prop3(params: &SigmaParams) -> Result<PropReport> {
    Ok(prop3_over(&PairTable::from_params(params)?))
}

pub(crate) fn prop3_over(table: &PairTable) -> PropReport {
    let n = table.n;
    // Parallel over v; find_map_first keeps the leftmost counterexample so
    // the answer is deterministic.
    let hit = (0..n)
        .into_par_iter()
        .find_map_first(|v| {
            for w in (v + 1)..n {
                let cvw = table.key(v, w);
                for x in (w + 1)..n {
                    let cvx = table.key(v, x);
                    for y in (x + 1)..n {
                        if cvw == table.key(x, y) && cvx == table.key(v, y) {
                            return Some(vec![
                                v as u64 + 1,
                                w as u64 + 1,
                                x as u64 + 1,
                                y as u64 + 1,
                            ]);
                        }
                    }
                }
            }
            None
        });
    let n = n as u64;
    let checked = if n >= 4 {
        n * (n - 1) * (n - 2) * (n - 3) / 24
    } else {
        0
    };
    PropReport {
        checked,
        counterexample: hit,
    }
}

// ---------------------------------------------------------------------------
// Stepping-up facts.

/// A violation of the stepping-up structure on {0,1}^n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SteppingViolation {
    /// gamma(u,v) = gamma(v,w) for some sorted triple.
    GammaTie { triple: [u64; 3] },
    /// Adjacent gammas coincide along a sorted 5-tuple.
    AdjacentEqual { tuple: [u64; 5] },
    /// The minimum of the four consecutive gammas is not uniquely attained.
    MinNotUnique { tuple: [u64; 5] },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SteppingReport {
    pub bit_length: u8,
    pub tuples_checked: u64,
    pub triples_checked: u64,
    pub mode: ModeReport,
    pub violation: Option<SteppingViolation>,
}

impl SteppingReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

fn gamma_fast(x: u64, y: u64, n: u8) -> u8 {
    n - (63 - (x ^ y).leading_zeros() as u8)
}

fn check_tuple(tuple: &[u64; 5], n: u8) -> Option<SteppingViolation> {
    let g: Vec<u8> = (0..4)
        .map(|i| gamma_fast(tuple[i], tuple[i + 1], n))
        .collect();
    for i in 0..3 {
        if g[i] == g[i + 1] {
            return Some(SteppingViolation::AdjacentEqual { tuple: *tuple });
        }
    }
    let min = *g.iter().min().unwrap();
    if g.iter().filter(|&&x| x == min).count() != 1 {
        return Some(SteppingViolation::MinNotUnique { tuple: *tuple });
    }
    None
}

/// Check the stepping-up facts on {0,1}^n: gamma(u,v) != gamma(v,w) for
/// sorted triples, and along every sorted 5-tuple the consecutive gammas
/// are pairwise-adjacent distinct with a uniquely attained minimum.
///
/// Exhaustive mode enumerates all triples and 5-tuples (n <= 6). Sampled
/// mode draws `sample_size` sorted 5-tuples by direct seeded vertex draws
/// and checks the tuple facts plus gamma-distinctness on all ten internal
/// triples of each tuple.
pub fn check_stepping_facts(n: u8, mode: Mode) -> Result<SteppingReport> {
    if n == 0 || n > 63 {
        return Err(Error::Parameter(format!("bit length {n} not in 1..=63")));
    }
    let size = 1u64 << n;
    match mode {
        Mode::Exhaustive => {
            if n > 6 {
                return Err(Error::Capacity(format!(
                    "exhaustive 5-tuple enumeration needs n <= 6, got {n}"
                )));
            }
            let mut triples_checked = 0u64;
            for u in 0..size {
                for v in (u + 1)..size {
                    let guv = gamma_fast(u, v, n);
                    for w in (v + 1)..size {
                        triples_checked += 1;
                        if guv == gamma_fast(v, w, n) {
                            return Ok(SteppingReport {
                                bit_length: n,
                                tuples_checked: 0,
                                triples_checked,
                                mode: ModeReport::Exhaustive,
                                violation: Some(SteppingViolation::GammaTie { triple: [u, v, w] }),
                            });
                        }
                    }
                }
            }
            let mut tuples_checked = 0u64;
            if size >= 5 {
                let mut subset: Vec<u64> = (0..5).collect();
                loop {
                    let tuple = [subset[0], subset[1], subset[2], subset[3], subset[4]];
                    tuples_checked += 1;
                    if let Some(violation) = check_tuple(&tuple, n) {
                        return Ok(SteppingReport {
                            bit_length: n,
                            tuples_checked,
                            triples_checked,
                            mode: ModeReport::Exhaustive,
                            violation: Some(violation),
                        });
                    }
                    if !colex_next(&mut subset, size) {
                        break;
                    }
                }
            }
            Ok(SteppingReport {
                bit_length: n,
                tuples_checked,
                triples_checked,
                mode: ModeReport::Exhaustive,
                violation: None,
            })
        }
        Mode::Sampled { sample_size, seed } => {
            if size < 8 {
                return Err(Error::Parameter(format!(
                    "sampled 5-tuples need n >= 3, got n = {n}"
                )));
            }
            let mask = size - 1;
            let mut tuples_checked = 0u64;
            let mut triples_checked = 0u64;
            let mut counter = 0u64;
            let mut tuple = [0u64; 5];
            while tuples_checked < sample_size {
                // Draw five distinct vertices, sort them.
                let mut filled = 0;
                while filled < 5 {
                    let x = crate::sample::mix64(seed, counter) & mask;
                    counter += 1;
                    if !tuple[..filled].contains(&x) {
                        tuple[filled] = x;
                        filled += 1;
                    }
                }
                tuple.sort_unstable();
                tuples_checked += 1;
                if let Some(violation) = check_tuple(&tuple, n) {
                    return Ok(SteppingReport {
                        bit_length: n,
                        tuples_checked,
                        triples_checked,
                        mode: ModeReport::Sampled { sample_size, seed },
                        violation: Some(violation),
                    });
                }
                for i in 0..5 {
                    for j in (i + 1)..5 {
                        for l in (j + 1)..5 {
                            triples_checked += 1;
                            if gamma_fast(tuple[i], tuple[j], n) == gamma_fast(tuple[j], tuple[l], n)
                            {
                                return Ok(SteppingReport {
                                    bit_length: n,
                                    tuples_checked,
                                    triples_checked,
                                    mode: ModeReport::Sampled { sample_size, seed },
                                    violation: Some(SteppingViolation::GammaTie {
                                        triple: [tuple[i], tuple[j], tuple[l]],
                                    }),
                                });
                            }
                        }
                    }
                }
            }
            Ok(SteppingReport {
                bit_length: n,
                tuples_checked,
                triples_checked,
                mode: ModeReport::Sampled { sample_size, seed },
                violation: None,
            })
        }
    }
}
