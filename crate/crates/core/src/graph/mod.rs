//! Bit-packed undirected graphs and the edge/density queries used throughout
//! the crate.
//!
//! Row `u` holds the neighbourhood of `u` as `ceil(n / 64)` words, vertex `v`
//! at bit `v % 64` of word `v / 64`. Rows are symmetric and the diagonal is
//! always clear.

mod generate;
mod io;

pub use generate::generate_gnp;
pub use io::{read_edge_list, write_edge_list};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// `C(s, 2)`.
#[inline]
pub fn pairs(s: usize) -> u64 {
    let s = s as u64;
    s * s.saturating_sub(1) / 2
}

/// How a graph came to be; fixtures and parsed graphs have none.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub p: f64,
    pub seed: u64,
}

/// Immutable undirected simple graph.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    provenance: Option<Provenance>,
}

impl Graph {
    pub(crate) fn from_rows(n: usize, rows: Vec<u64>, provenance: Option<Provenance>) -> Self {
        debug_assert_eq!(rows.len(), n * words_for(n));
        Graph { n, words: words_for(n), rows, provenance }
    }

    /// Graph on `n` vertices with the given edges. Duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::arg("graph needs at least one vertex"));
        }
        let words = words_for(n);
        let mut rows = vec![0u64; n * words];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::arg(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::arg(format!("self-loop at vertex {u}")));
            }
            rows[u * words + v / 64] |= 1 << (v % 64);
            rows[v * words + u / 64] |= 1 << (u % 64);
        }
        Ok(Graph { n, words, rows, provenance: None })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_edges(n, &[])
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for u in 0..n {
            let row = &mut g.rows[u * g.words..(u + 1) * g.words];
            for v in 0..n {
                if v != u {
                    row[v / 64] |= 1 << (v % 64);
                }
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn provenance(&self) -> Option<Provenance> {
        self.provenance
    }

    /// Neighbourhood bitset of `v`.
    #[inline]
    pub fn row(&self, v: Vertex) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        (self.rows[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> u64 {
        self.rows.iter().map(|w| w.count_ones() as u64).sum::<u64>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n).flat_map(move |u| {
            let row = self.row(u);
            (u + 1..self.n).filter(move |&v| (row[v / 64] >> (v % 64)) & 1 == 1).map(move |v| (u, v))
        })
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.n {
            return Err(Error::arg(format!("vertex {v} out of range for n = {}", self.n)));
        }
        Ok(())
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.members().last() {
            Some(&v) => self.check_vertex(v),
            None => Ok(()),
        }
    }

    /// `true` if every pair in `s` is adjacent.
    pub fn is_clique(&self, s: &VertexSet) -> bool {
        let m = s.members();
        m.iter().enumerate().all(|(a, &u)| m[a + 1..].iter().all(|&v| self.has_edge(u, v)))
    }
}

/// A set of vertices, kept strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    /// Builds a set from arbitrary order; duplicates are rejected.
    pub fn new(mut members: Vec<Vertex>) -> Result<Self> {
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::arg(format!("duplicate vertex {}", w[0])));
        }
        Ok(VertexSet(members))
    }

    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn members(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|&v| other.contains(v)).collect())
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }
}

impl TryFrom<Vec<Vertex>> for VertexSet {
    type Error = Error;

    fn try_from(v: Vec<Vertex>) -> Result<Self> {
        VertexSet::new(v)
    }
}

/// Exact density `edges / pairs` with its floating value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Density {
    pub edges: u64,
    pub pairs: u64,
    pub value: f64,
}

impl Density {
    pub fn new(edges: u64, size: usize) -> Self {
        let pairs = pairs(size);
        Density { edges, pairs, value: edges as f64 / pairs as f64 }
    }
}

/// `|E({v}, S)|`; a self-pair contributes nothing.
pub fn degree_into(g: &Graph, v: Vertex, s: &VertexSet) -> Result<usize> {
    g.check_vertex(v)?;
    g.check_set(s)?;
    Ok(s.members().iter().filter(|&&u| u != v && g.has_edge(v, u)).count())
}

/// `|E(S, T)|`: edges with one endpoint in `S` and the other in `T`, each
/// unordered edge counted once even when both endpoints lie in `S ∩ T`.
pub fn edge_count_between(g: &Graph, s: &VertexSet, t: &VertexSet) -> Result<u64> {
    g.check_set(s)?;
    g.check_set(t)?;
    let ordered: u64 = s.members().iter().map(|&u| degree_into(g, u, t).map(|d| d as u64)).sum::<Result<u64>>()?;
    let both = s.intersection(t);
    let inside: u64 =
        both.members().iter().map(|&u| degree_into(g, u, &both).map(|d| d as u64)).sum::<Result<u64>>()?;
    Ok(ordered - inside / 2)
}

/// Induced edge count `|E(S, S)|`.
pub fn induced_edges(g: &Graph, s: &VertexSet) -> Result<u64> {
    edge_count_between(g, s, s)
}

pub fn density(g: &Graph, s: &VertexSet) -> Result<Density> {
    if s.len() < 2 {
        return Err(Error::UndefinedDensity(s.len()));
    }
    Ok(Density::new(induced_edges(g, s)?, s.len()))
}
