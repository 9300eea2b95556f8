//! The partitioned greedy dense-subgraph algorithm and the index-order greedy
//! clique baseline.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{pairs, Graph, Vertex, VertexSet};
use crate::seed;

/// Vertices `0..n` split into `k` equal cells plus an unused leftover pool.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Partition {
    n: usize,
    cells: Vec<VertexSet>,
    leftover: VertexSet,
    seed: Option<u64>,
}

impl Partition {
    /// Deals `order` into `k` consecutive cells of `order.len() / k` vertices;
    /// the tail goes to the leftover pool.
    pub fn from_order(order: &[Vertex], k: usize) -> Result<Self> {
        let n = order.len();
        if k == 0 || k > n {
            return Err(Error::arg(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
        }
        let size = n / k;
        let cells = order[..k * size].chunks(size).map(|c| VertexSet::new(c.to_vec())).collect::<Result<Vec<_>>>()?;
        let leftover = VertexSet::new(order[k * size..].to_vec())?;
        let p = Partition { n, cells, leftover, seed: None };
        p.validate()?;
        Ok(p)
    }

    /// Explicit cells; everything not covered becomes leftover.
    pub fn from_cells(n: usize, cells: Vec<VertexSet>) -> Result<Self> {
        let mut seen = vec![false; n];
        for c in &cells {
            for &v in c.members() {
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidPartition(format!("vertex {v} out of range or repeated")));
                }
            }
        }
        let leftover = VertexSet::new((0..n).filter(|&v| !seen[v]).collect())?;
        let p = Partition { n, cells, leftover, seed: None };
        p.validate()?;
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[VertexSet] {
        &self.cells
    }

    pub fn leftover(&self) -> &VertexSet {
        &self.leftover
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    fn validate(&self) -> Result<()> {
        if self.cells.is_empty() {
            return Err(Error::InvalidPartition("no cells".into()));
        }
        if let Some(i) = self.cells.iter().position(|c| c.is_empty()) {
            return Err(Error::InvalidPartition(format!("cell {} is empty", i + 1)));
        }
        let mut seen = vec![false; self.n];
        for &v in self.cells.iter().flat_map(|c| c.members()).chain(self.leftover.members()) {
            if v >= self.n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPartition(format!("vertex {v} out of range or repeated")));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidPartition("cells and leftover do not cover V".into()));
        }
        Ok(())
    }
}

/// Shuffles `0..n` with the seeded Fisher–Yates of [`seed::shuffled_range`]
/// and deals the result into `k` cells of `n / k` vertices.
pub fn partition_vertices(n: usize, k: usize, seed: u64) -> Result<Partition> {
    if k == 0 || k > n {
        return Err(Error::arg(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let mut p = Partition::from_order(&seed::shuffled_range(n, seed), k)?;
    p.seed = Some(seed);
    Ok(p)
}

/// One greedy step: at step `i` the vertex picked from cell `i + 1` and the
/// number of edges it has into the `i` vertices picked before it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyStep {
    pub i: usize,
    pub vertex: Vertex,
    pub gained: usize,
}

impl GreedyStep {
    /// 1-based index of the cell the vertex came from.
    pub fn cell(&self) -> usize {
        self.i + 1
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GreedyTrace {
    pub steps: Vec<GreedyStep>,
    pub final_set: VertexSet,
    pub final_edges: u64,
    pub final_density: f64,
}

impl GreedyTrace {
    pub fn gained(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().map(|s| s.gained)
    }

    /// JSON array of `{i, vertex, gained}`.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.steps)?)
    }

    /// CSV with header `step,vertex,gained`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["step", "vertex", "gained"])?;
        for s in &self.steps {
            w.write_record([s.i.to_string(), s.vertex.to_string(), s.gained.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Runs the partitioned greedy: starting from the empty set, step `i` adds
/// the vertex of cell `i + 1` with the most edges into the current set, ties
/// going to the lowest vertex index. The result holds one vertex per cell.
pub fn greedy_dense(g: &Graph, partition: &Partition) -> Result<GreedyTrace> {
    if partition.n() != g.n() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} vertices, graph has {}",
            partition.n(),
            g.n()
        )));
    }
    let k = partition.k();
    let mut chosen: Vec<Vertex> = Vec::with_capacity(k);
    let mut steps = Vec::with_capacity(k);
    let mut total = 0u64;
    for (i, cell) in partition.cells().iter().enumerate() {
        let mut best: Option<(Vertex, usize)> = None;
        for &v in cell.members() {
            let d = chosen.iter().filter(|&&u| g.has_edge(v, u)).count();
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((v, d));
            }
        }
        let (vertex, gained) = best.ok_or_else(|| Error::InvalidPartition(format!("cell {} is empty", i + 1)))?;
        chosen.push(vertex);
        total += gained as u64;
        steps.push(GreedyStep { i, vertex, gained });
    }
    let final_set = VertexSet::new(chosen)?;
    Ok(GreedyTrace { steps, final_set, final_edges: total, final_density: total as f64 / pairs(k) as f64 })
}

/// Index-order greedy clique: keep every vertex adjacent to all kept so far.
pub fn plain_greedy_clique(g: &Graph) -> VertexSet {
    let mut candidates = vec![u64::MAX; g.row(0).len()];
    let mut clique = Vec::new();
    for v in 0..g.n() {
        if (candidates[v / 64] >> (v % 64)) & 1 == 1 {
            clique.push(v);
            for (c, &r) in candidates.iter_mut().zip(g.row(v)) {
                *c &= r;
            }
        }
    }
    VertexSet::new(clique).expect("scan order is increasing")
}
