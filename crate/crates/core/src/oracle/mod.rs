//! Exact brute-force ground truth at desk scale.
//!
//! Every search enumerates size-`k` subsets in lexicographic order by
//! depth-first search. The only pruning rule assumes the remaining picks are
//! adjacent to everything, which never discards a subset that could matter.
//! Exceeding a budget is an error, never an approximation.

mod clique;

pub use clique::max_clique_exact;

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::required_edges;
use crate::error::{Error, Result};
use crate::graph::{pairs, Graph, Vertex, VertexSet};

/// Resource caps for the exact searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    /// Search-tree nodes explored by [`max_density_subgraph_exact`].
    pub max_nodes: u64,
    /// Largest `C(n, k)` accepted by [`count_dense_subgraphs`].
    pub max_subsets: u64,
    /// Largest `n` accepted by [`max_clique_exact`].
    pub max_clique_n: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_nodes: 1_000_000_000, max_subsets: 100_000_000, max_clique_n: 256 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub best_set: VertexSet,
    pub best_edges: u64,
    pub best_density: f64,
    /// Complete size-`k` subsets evaluated.
    pub subsets_examined: u64,
    /// Branches cut by the bound.
    pub pruned: u64,
}

/// Upper bound on the final edge count with `depth` vertices chosen holding
/// `edges` edges and `rest` picks to go.
#[inline]
fn optimistic(edges: u64, depth: usize, rest: usize) -> u64 {
    edges + (rest * depth) as u64 + pairs(rest)
}

#[inline]
fn gain(g: &Graph, chosen: &[Vertex], v: Vertex) -> u64 {
    chosen.iter().filter(|&&u| g.has_edge(u, v)).count() as u64
}

const FLUSH_EVERY: u64 = 4096;

struct NodeMeter<'a> {
    local: u64,
    shared: &'a AtomicU64,
    limit: u64,
}

impl NodeMeter<'_> {
    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.local += 1;
        if self.local == FLUSH_EVERY {
            self.flush()?;
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<()> {
        let total = self.shared.fetch_add(self.local, Ordering::Relaxed) + self.local;
        self.local = 0;
        if total > self.limit {
            return Err(Error::BudgetExceeded(format!("more than {} search nodes", self.limit)));
        }
        Ok(())
    }
}

struct Densest<'g, 'm> {
    g: &'g Graph,
    k: usize,
    chosen: Vec<Vertex>,
    best: Option<(u64, Vec<Vertex>)>,
    leaves: u64,
    pruned: u64,
    meter: NodeMeter<'m>,
}

impl Densest<'_, '_> {
    fn dfs(&mut self, start: usize, edges: u64) -> Result<()> {
        let depth = self.chosen.len();
        if depth == self.k {
            self.leaves += 1;
            if self.best.as_ref().is_none_or(|(b, _)| edges > *b) {
                self.best = Some((edges, self.chosen.clone()));
            }
            return Ok(());
        }
        let rest = self.k - depth - 1;
        for v in start..=self.g.n() - (rest + 1) {
            self.meter.tick()?;
            let e = edges + gain(self.g, &self.chosen, v);
            if let Some((b, _)) = &self.best {
                // only a strictly better subset can replace the incumbent
                if optimistic(e, depth + 1, rest) <= *b {
                    self.pruned += 1;
                    continue;
                }
            }
            self.chosen.push(v);
            self.dfs(v + 1, e)?;
            self.chosen.pop();
        }
        Ok(())
    }
}

fn check_k(g: &Graph, k: usize) -> Result<()> {
    if k < 2 || k > g.n() {
        return Err(Error::arg(format!("need 2 <= k <= n, got k = {k}, n = {}", g.n())));
    }
    Ok(())
}

fn finish(best: (u64, Vec<Vertex>), k: usize, leaves: u64, pruned: u64) -> Result<OracleResult> {
    Ok(OracleResult {
        best_set: VertexSet::new(best.1)?,
        best_edges: best.0,
        best_density: best.0 as f64 / pairs(k) as f64,
        subsets_examined: leaves,
        pruned,
    })
}

/// The size-`k` subset with the most induced edges; the lexicographically
/// first one on ties.
pub fn max_density_subgraph_exact(g: &Graph, k: usize, budget: &OracleBudget) -> Result<OracleResult> {
    check_k(g, k)?;
    let shared = AtomicU64::new(0);
    let mut s = Densest {
        g,
        k,
        chosen: Vec::with_capacity(k),
        best: None,
        leaves: 0,
        pruned: 0,
        meter: NodeMeter { local: 0, shared: &shared, limit: budget.max_nodes },
    };
    s.dfs(0, 0)?;
    s.meter.flush()?;
    finish(s.best.expect("k <= n leaves at least one subset"), k, s.leaves, s.pruned)
}

/// Same answer as [`max_density_subgraph_exact`], with the search split on
/// the first vertex and the prefixes run in parallel. `subsets_examined` and
/// `pruned` depend on the split.
pub fn max_density_subgraph_exact_par(g: &Graph, k: usize, budget: &OracleBudget) -> Result<OracleResult> {
    check_k(g, k)?;
    let shared = AtomicU64::new(0);
    let parts = (0..=g.n() - k)
        .into_par_iter()
        .map(|first| {
            let mut s = Densest {
                g,
                k,
                chosen: vec![first],
                best: None,
                leaves: 0,
                pruned: 0,
                meter: NodeMeter { local: 1, shared: &shared, limit: budget.max_nodes },
            };
            s.dfs(first + 1, 0)?;
            s.meter.flush()?;
            Ok((s.best, s.leaves, s.pruned))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut best: Option<(u64, Vec<Vertex>)> = None;
    let (mut leaves, mut pruned) = (0, 0);
    for (b, l, p) in parts {
        leaves += l;
        pruned += p;
        if let Some(b) = b {
            if best.as_ref().is_none_or(|(e, _)| b.0 > *e) {
                best = Some(b);
            }
        }
    }
    finish(best.expect("k <= n leaves at least one subset"), k, leaves, pruned)
}

struct Counter<'g> {
    g: &'g Graph,
    k: usize,
    need: u64,
    chosen: Vec<Vertex>,
    count: u64,
}

impl Counter<'_> {
    fn dfs(&mut self, start: usize, edges: u64) {
        let depth = self.chosen.len();
        if depth == self.k {
            self.count += (edges >= self.need) as u64;
            return;
        }
        let n = self.g.n();
        let rest = self.k - depth - 1;
        for v in start..=n - (rest + 1) {
            let e = edges + gain(self.g, &self.chosen, v);
            if optimistic(e, depth + 1, rest) < self.need {
                continue;
            }
            if e >= self.need {
                // every completion qualifies
                self.count += n_choose(n - v - 1, rest);
                continue;
            }
            self.chosen.push(v);
            self.dfs(v + 1, e);
            self.chosen.pop();
        }
    }
}

/// `C(n, k)` saturating at `u64::MAX`.
pub fn n_choose(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for j in 0..k {
        c = c * (n - j) as u128 / (j + 1) as u128;
        if c > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    c as u64
}

fn count_setup(g: &Graph, k: usize, delta: f64, budget: &OracleBudget) -> Result<u64> {
    check_k(g, k)?;
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::arg(format!("delta {delta} outside [0, 1]")));
    }
    let subsets = n_choose(g.n(), k);
    if subsets > budget.max_subsets {
        return Err(Error::BudgetExceeded(format!(
            "C({}, {k}) = {subsets} subsets exceeds {}",
            g.n(),
            budget.max_subsets
        )));
    }
    Ok(required_edges(delta, pairs(k)))
}

/// Number of size-`k` subsets with at least `ceil((1 - δ) C(k, 2))` edges.
pub fn count_dense_subgraphs(g: &Graph, k: usize, delta: f64, budget: &OracleBudget) -> Result<u64> {
    let need = count_setup(g, k, delta, budget)?;
    let mut c = Counter { g, k, need, chosen: Vec::with_capacity(k), count: 0 };
    c.dfs(0, 0);
    Ok(c.count)
}

/// [`count_dense_subgraphs`] split on the first vertex and summed.
pub fn count_dense_subgraphs_par(g: &Graph, k: usize, delta: f64, budget: &OracleBudget) -> Result<u64> {
    let need = count_setup(g, k, delta, budget)?;
    Ok((0..=g.n() - k)
        .into_par_iter()
        .map(|first| {
            let mut c = Counter { g, k, need, chosen: vec![first], count: 0 };
            if need == 0 {
                return n_choose(g.n() - first - 1, k - 1);
            }
            c.dfs(first + 1, 0);
            c.count
        })
        .sum())
}
