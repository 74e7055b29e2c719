//! Exact minimum color counts for (p,q)-colorings of tiny complete
//! k-graphs, by iterative deepening over the color count.
//!
//! For each candidate count c = q, q+1, ... the search assigns colors to
//! edges in colexicographic order. Canonical symmetry breaking admits a new
//! color label only when every smaller label already appears on an earlier
//! edge, so each partition of the edge set into color classes is explored
//! at most once. A p-subset with d distinct colors so far and r uncolored
//! internal edges is a dead end once d + r < q. Exhausting level c refutes
//! c, so the first level that completes is the exact minimum.

use std::time::Instant;

use crate::combinat::{choose, colex_next, colex_rank};
use crate::verify::ColoringSource;
use crate::{Error, Result};

/// Node and wall-clock limits for the search.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_seconds: f64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_nodes: u64::MAX,
            max_seconds: f64::INFINITY,
        }
    }
}

/// A fully materialized edge coloring of a complete k-graph: color ids
/// indexed by colex edge rank. Doubles as the certificate format and the
/// coloring read back from dump files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitColoring {
    uniformity: usize,
    n_vertices: u64,
    colors: Vec<u32>,
}

impl ExplicitColoring {
    pub fn new(uniformity: usize, n_vertices: u64, colors: Vec<u32>) -> Result<Self> {
        let expected = choose(n_vertices, uniformity as u64)?;
        if colors.len() as u64 != expected {
            return Err(Error::Parameter(format!(
                "expected {expected} edge colors, got {}",
                colors.len()
            )));
        }
        Ok(Self {
            uniformity,
            n_vertices,
            colors,
        })
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn distinct_colors(&self) -> u32 {
        let mut seen: Vec<u32> = self.colors.to_vec();
        seen.sort_unstable();
        seen.dedup();
        seen.len() as u32
    }
}

impl ColoringSource for ExplicitColoring {
    fn uniformity(&self) -> usize {
        self.uniformity
    }

    fn n_vertices(&self) -> u64 {
        self.n_vertices
    }

    fn color_of(&self, edge: &[u64]) -> u128 {
        self.colors[colex_rank(edge) as usize] as u128
    }
}

/// Search outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactStatus {
    /// The minimum is exactly this value and `certificate` achieves it.
    Exact(u32),
    /// Budget ran out: every count below this value is refuted, the value
    /// itself is undecided.
    LowerBound(u32),
}

#[derive(Debug)]
pub struct ExactResult {
    pub status: ExactStatus,
    pub certificate: Option<ExplicitColoring>,
    pub nodes_expanded: u64,
}

struct Instance {
    /// For each p-subset, the colex ranks of its internal edges.
    subset_edges: Vec<Vec<u32>>,
    /// For each edge, the subsets it belongs to.
    edge_subsets: Vec<Vec<u32>>,
    n_edges: usize,
}

impl Instance {
    fn build(n: u64, k: usize, p: usize) -> Result<Self> {
        let n_edges = choose(n, k as u64)? as usize;
        let n_subsets = choose(n, p as u64)? as usize;
        let mut subset_edges = Vec::with_capacity(n_subsets);
        let mut edge_subsets = vec![Vec::new(); n_edges];
        let mut subset: Vec<u64> = (0..p as u64).collect();
        let mut si = 0u32;
        loop {
            let mut edges = Vec::with_capacity(choose(p as u64, k as u64)? as usize);
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                let edge: Vec<u64> = idx.iter().map(|&i| subset[i]).collect();
                let rank = colex_rank(&edge) as u32;
                edges.push(rank);
                edge_subsets[rank as usize].push(si);
                // Advance the index combination (colex over positions).
                let mut i = 0;
                loop {
                    if i == k {
                        break;
                    }
                    let cap = if i + 1 < k { idx[i + 1] } else { p };
                    if idx[i] + 1 < cap {
                        idx[i] += 1;
                        for (j, v) in idx.iter_mut().enumerate().take(i) {
                            *v = j;
                        }
                        break;
                    }
                    i += 1;
                }
                if i == k {
                    break;
                }
            }
            edges.sort_unstable();
            subset_edges.push(edges);
            si += 1;
            if !colex_next(&mut subset, n) {
                break;
            }
        }
        debug_assert_eq!(subset_edges.len(), n_subsets);
        Ok(Self {
            subset_edges,
            edge_subsets,
            n_edges,
        })
    }
}

struct Search<'a> {
    inst: &'a Instance,
    q: u32,
    max_colors: u32,
    colors: Vec<u32>,
    /// Distinct-color bitmask per subset (color labels are 1-based bits).
    masks: Vec<u64>,
    /// Uncolored-edge count per subset.
    remaining: Vec<u32>,
    nodes: u64,
    budget: SearchBudget,
    started: Instant,
    out_of_budget: bool,
    /// When set, keep searching past the first solution and count leaves.
    count_all: bool,
    solutions: u64,
    first_solution: Option<Vec<u32>>,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, q: u32, max_colors: u32, budget: SearchBudget) -> Self {
        Search {
            inst,
            q,
            max_colors,
            colors: vec![0; inst.n_edges],
            masks: vec![0; inst.subset_edges.len()],
            remaining: inst
                .subset_edges
                .iter()
                .map(|e| e.len() as u32)
                .collect(),
            nodes: 0,
            budget,
            started: Instant::now(),
            out_of_budget: false,
            count_all: false,
            solutions: 0,
            first_solution: None,
        }
    }

    fn budget_exhausted(&mut self) -> bool {
        if self.out_of_budget {
            return true;
        }
        let hit_nodes = self.nodes >= self.budget.max_nodes;
        // The clock is polled only every 4096 nodes.
        let hit_clock = self.nodes.is_multiple_of(4096)
            && self.started.elapsed().as_secs_f64() > self.budget.max_seconds;
        self.out_of_budget = hit_nodes || hit_clock;
        self.out_of_budget
    }

    /// Extend the partial coloring at `edge`; returns true when a solution
    /// was found and the search should unwind (not in count_all mode).
    fn dfs(&mut self, edge: usize, max_used: u32) -> bool {
        if edge == self.inst.n_edges {
            self.solutions += 1;
            if self.first_solution.is_none() {
                self.first_solution = Some(self.colors.clone());
            }
            return !self.count_all;
        }
        let limit = (max_used + 1).min(self.max_colors);
        for color in 1..=limit {
            self.nodes += 1;
            if self.budget_exhausted() {
                return false;
            }
            // Tentatively place `color` and prune on any subset that can no
            // longer reach q distinct colors.
            let bit = 1u64 << color;
            self.colors[edge] = color;
            let mut feasible = true;
            for &si in &self.inst.edge_subsets[edge] {
                let si = si as usize;
                self.masks[si] |= bit;
                self.remaining[si] -= 1;
                let d = self.masks[si].count_ones();
                if d + self.remaining[si] < self.q {
                    feasible = false;
                }
            }
            if feasible && self.dfs(edge + 1, max_used.max(color)) {
                return true;
            }
            // Undo.
            for &si in &self.inst.edge_subsets[edge] {
                let si = si as usize;
                self.remaining[si] += 1;
                // Recompute the mask bit: another internal edge may still
                // carry the same color.
                let holds = self.inst.subset_edges[si]
                    .iter()
                    .any(|&e| e as usize != edge && self.colors[e as usize] == color);
                if !holds {
                    self.masks[si] &= !bit;
                }
            }
            self.colors[edge] = 0;
            if self.out_of_budget {
                return false;
            }
        }
        false
    }
}

/// Exact minimum number of colors in a (p,q)-coloring of the complete
/// k-graph on n vertices, for n <= 8 and k in {2, 3}.
pub fn exact_min_colors(n: u64, k: usize, p: usize, q: usize, budget: SearchBudget) -> Result<ExactResult> {
    if !(k == 2 || k == 3) {
        return Err(Error::Capacity(format!("uniformity {k} not supported")));
    }
    if !(k <= p && p as u64 <= n && n <= 8) {
        return Err(Error::Capacity(format!(
            "need k <= p <= n <= 8, got k={k} p={p} n={n}"
        )));
    }
    let per_subset = choose(p as u64, k as u64)?;
    if q < 1 || q as u64 > per_subset {
        return Err(Error::Parameter(format!(
            "q={q} not in 1..=C({p},{k}) = {per_subset}"
        )));
    }
    let inst = Instance::build(n, k, p)?;
    let mut nodes_total = 0u64;
    let mut c = q as u32;
    loop {
        let mut search = Search::new(&inst, q as u32, c, budget);
        search.budget.max_nodes = budget.max_nodes.saturating_sub(nodes_total);
        let found = search.dfs(0, 0);
        nodes_total += search.nodes;
        if found {
            let colors = search.first_solution.expect("solution recorded");
            let certificate = ExplicitColoring::new(k, n, colors)?;
            // Level c-1 was refuted, so the solution uses all c labels.
            debug_assert_eq!(certificate.distinct_colors(), c);
            return Ok(ExactResult {
                status: ExactStatus::Exact(c),
                certificate: Some(certificate),
                nodes_expanded: nodes_total,
            });
        }
        if search.out_of_budget {
            return Ok(ExactResult {
                status: ExactStatus::LowerBound(c),
                certificate: None,
                nodes_expanded: nodes_total,
            });
        }
        // Level c fully refuted.
        c += 1;
        debug_assert!(
            c as u64 <= inst.n_edges as u64 + 1,
            "a rainbow coloring always succeeds"
        );
    }
}

/// Number of canonical colorings with at most `max_colors` labels that are
/// valid (p,q)-colorings — i.e. of partitions of the edge set into at most
/// `max_colors` classes giving every p-subset at least q classes. Used to
/// cross-check that the canonical search visits each partition exactly once.
pub fn count_pq_colorings(n: u64, k: usize, p: usize, q: usize, max_colors: u32) -> Result<u64> {
    let inst = Instance::build(n, k, p)?;
    let mut search = Search::new(&inst, q as u32, max_colors, SearchBudget::default());
    search.count_all = true;
    search.dfs(0, 0);
    Ok(search.solutions)
}
