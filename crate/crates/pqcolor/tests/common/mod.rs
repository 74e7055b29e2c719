//! Reference implementations used as independent oracles: a deliberately
//! naive (p,q) verifier, a restricted-growth-string partition enumerator,
//! and a plain constraint search over edge colorings. All of them avoid the
//! library's enumeration and caching machinery on purpose.
//!
//! Shared by several test targets; each uses a different subset.
#![allow(dead_code)]

use std::collections::HashMap;

use pqcolor::verify::ColoringSource;

/// Result of the naive verifier.
pub struct NaiveOutcome {
    pub pass: bool,
    pub checked: u64,
    pub min_colors: u32,
    /// Every violating subset (1-based labels), uncapped.
    pub violations: Vec<Vec<u64>>,
}

/// Walk all p-subsets by plain recursion in lexicographic order and
/// recompute every edge color from the source each time, with no caching
/// and no parallelism.
pub fn naive_verify(src: &dyn ColoringSource, p: usize, q: usize) -> NaiveOutcome {
    let n = src.n_vertices();
    let k = src.uniformity();
    let mut outcome = NaiveOutcome {
        pass: true,
        checked: 0,
        min_colors: u32::MAX,
        violations: Vec::new(),
    };
    let mut subset: Vec<u64> = Vec::with_capacity(p);
    recurse_subsets(n, p, 0, &mut subset, &mut |subset| {
        let mut colors: Vec<u128> = Vec::new();
        let mut edge: Vec<u64> = Vec::with_capacity(k);
        recurse_subsets(p as u64, k, 0, &mut edge, &mut |edge_idx| {
            let edge: Vec<u64> = edge_idx.iter().map(|&i| subset[i as usize]).collect();
            colors.push(src.color_of(&edge));
        });
        let mut distinct = colors.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let d = distinct.len() as u32;
        outcome.checked += 1;
        outcome.min_colors = outcome.min_colors.min(d);
        if (d as usize) < q {
            outcome.pass = false;
            outcome.violations.push(subset.iter().map(|&v| v + 1).collect());
        }
    });
    outcome
}

fn recurse_subsets(n: u64, size: usize, start: u64, acc: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
    if acc.len() == size {
        f(acc);
        return;
    }
    let remaining = (size - acc.len()) as u64;
    for v in start..=(n - remaining) {
        acc.push(v);
        recurse_subsets(n, size, v + 1, acc, f);
        acc.pop();
    }
}

/// All k-subsets of [0, n) in lexicographic order.
pub fn all_subsets(n: u64, k: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut acc = Vec::with_capacity(k);
    recurse_subsets(n, k, 0, &mut acc, &mut |s| out.push(s.to_vec()));
    out
}

/// Count edge-set partitions into at most `max_colors` classes under which
/// every p-subset spans at least q classes, by enumerating restricted
/// growth strings with no pruning and filtering complete assignments.
pub fn rgs_count_valid_partitions(n: u64, k: usize, p: usize, q: usize, max_colors: u32) -> u64 {
    let edges = all_subsets(n, k);
    let index: HashMap<Vec<u64>, usize> = edges
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    // For each p-subset, the indices of its internal edges.
    let subsets: Vec<Vec<usize>> = all_subsets(n, p)
        .into_iter()
        .map(|s| {
            all_subsets(p as u64, k)
                .into_iter()
                .map(|idx| {
                    let edge: Vec<u64> = idx.iter().map(|&i| s[i as usize]).collect();
                    index[&edge]
                })
                .collect()
        })
        .collect();
    let mut labels = vec![0u32; edges.len()];
    let mut count = 0u64;
    rgs_recurse(&mut labels, 0, 0, max_colors, &mut |labels| {
        let valid = subsets.iter().all(|edges| {
            let mut seen: Vec<u32> = edges.iter().map(|&e| labels[e]).collect();
            seen.sort_unstable();
            seen.dedup();
            seen.len() >= q
        });
        if valid {
            count += 1;
        }
    });
    count
}

fn rgs_recurse(
    labels: &mut Vec<u32>,
    pos: usize,
    max_used: u32,
    cap: u32,
    f: &mut impl FnMut(&[u32]),
) {
    if pos == labels.len() {
        f(labels);
        return;
    }
    let limit = (max_used + 1).min(cap);
    for label in 1..=limit {
        labels[pos] = label;
        rgs_recurse(labels, pos + 1, max_used.max(label), cap, f);
    }
    labels[pos] = 0;
}

/// Plain depth-first constraint search: does a (p,q)-coloring of the
/// complete k-graph on n vertices exist with at most `colors` colors?
/// Lexicographic edge order, per-subset distinct-cardinality check
/// recomputed from scratch at every step, no symmetry breaking beyond
/// pinning the first edge.
pub fn csp_coloring_exists(n: u64, k: usize, p: usize, q: usize, colors: u32) -> bool {
    let edges = all_subsets(n, k);
    let index: HashMap<Vec<u64>, usize> = edges
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let subsets: Vec<Vec<usize>> = all_subsets(n, p)
        .into_iter()
        .map(|s| {
            all_subsets(p as u64, k)
                .into_iter()
                .map(|idx| {
                    let edge: Vec<u64> = idx.iter().map(|&i| s[i as usize]).collect();
                    index[&edge]
                })
                .collect()
        })
        .collect();
    let mut assignment: Vec<Option<u32>> = vec![None; edges.len()];

    fn feasible(subsets: &[Vec<usize>], assignment: &[Option<u32>], q: usize) -> bool {
        subsets.iter().all(|edges| {
            let mut seen: Vec<u32> = edges
                .iter()
                .filter_map(|&e| assignment[e])
                .collect();
            seen.sort_unstable();
            seen.dedup();
            let unassigned = edges.iter().filter(|&&e| assignment[e].is_none()).count();
            seen.len() + unassigned >= q
        })
    }

    fn dfs(
        pos: usize,
        subsets: &[Vec<usize>],
        assignment: &mut Vec<Option<u32>>,
        q: usize,
        colors: u32,
    ) -> bool {
        if pos == assignment.len() {
            return true;
        }
        let limit = if pos == 0 { 1 } else { colors };
        for c in 1..=limit {
            assignment[pos] = Some(c);
            if feasible(subsets, assignment, q) && dfs(pos + 1, subsets, assignment, q, colors) {
                return true;
            }
            assignment[pos] = None;
        }
        false
    }

    dfs(0, &subsets, &mut assignment, q, colors)
}

/// Deterministic pseudo-random coloring source for oracle-equivalence runs.
pub struct RandomColoring {
    pub uniformity: usize,
    pub n_vertices: u64,
    pub palette: u64,
    pub seed: u64,
}

impl ColoringSource for RandomColoring {
    fn uniformity(&self) -> usize {
        self.uniformity
    }

    fn n_vertices(&self) -> u64 {
        self.n_vertices
    }

    fn color_of(&self, edge: &[u64]) -> u128 {
        let rank = pqcolor::combinat::colex_rank(edge) as u64;
        (pqcolor::sample::mix64(self.seed, rank) % self.palette) as u128
    }
}
