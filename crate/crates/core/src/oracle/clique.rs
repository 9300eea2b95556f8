//! Maximum clique by branch and bound with greedy-colouring bounds.

use super::OracleBudget;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

struct Search<'g> {
    g: &'g Graph,
    best: Vec<Vertex>,
}

fn first_bit(set: &[u64]) -> Option<usize> {
    set.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

#[inline]
fn clear(set: &mut [u64], v: usize) {
    set[v / 64] &= !(1 << (v % 64));
}

impl Search<'_> {
    /// Greedy sequential colouring of `cand`; returns vertices in colour
    /// order with the colour (1-based) of each.
    fn colour(&self, cand: &[u64]) -> (Vec<Vertex>, Vec<usize>) {
        let mut uncoloured = cand.to_vec();
        let (mut order, mut colours) = (Vec::new(), Vec::new());
        let mut colour = 0;
        while first_bit(&uncoloured).is_some() {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = first_bit(&q) {
                clear(&mut q, v);
                clear(&mut uncoloured, v);
                for (w, r) in q.iter_mut().zip(self.g.row(v)) {
                    *w &= !r;
                }
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }

    fn expand(&mut self, clique: &mut Vec<Vertex>, mut cand: Vec<u64>) {
        let (order, colours) = self.colour(&cand);
        for idx in (0..order.len()).rev() {
            if clique.len() + colours[idx] <= self.best.len() {
                return;
            }
            let v = order[idx];
            clique.push(v);
            let next: Vec<u64> = cand.iter().zip(self.g.row(v)).map(|(c, r)| c & r).collect();
            if next.iter().all(|&w| w == 0) {
                if clique.len() > self.best.len() {
                    self.best = clique.clone();
                }
            } else {
                self.expand(clique, next);
            }
            clique.pop();
            clear(&mut cand, v);
        }
    }
}

/// A maximum clique of `g`.
pub fn max_clique_exact(g: &Graph, budget: &OracleBudget) -> Result<VertexSet> {
    if g.n() > budget.max_clique_n {
        return Err(Error::BudgetExceeded(format!(
            "n = {} exceeds the clique search limit {}",
            g.n(),
            budget.max_clique_n
        )));
    }
    let mut cand = vec![0u64; g.row(0).len()];
    for v in 0..g.n() {
        cand[v / 64] |= 1 << (v % 64);
    }
    let mut s = Search { g, best: Vec::new() };
    s.expand(&mut Vec::new(), cand);
    VertexSet::new(s.best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_gnp;

    fn brute_force_omega(g: &Graph) -> usize {
        let n = g.n();
        (1u32..1 << n)
            .filter(|mask| {
                let vs: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
                g.is_clique(&VertexSet::new(vs).unwrap())
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn trivial_graphs() {
        let b = OracleBudget::default();
        assert_eq!(max_clique_exact(&Graph::empty(10).unwrap(), &b).unwrap().len(), 1);
        assert_eq!(max_clique_exact(&Graph::complete(12).unwrap(), &b).unwrap().len(), 12);
        assert_eq!(max_clique_exact(&Graph::empty(1).unwrap(), &b).unwrap().len(), 1);
    }

    #[test]
    fn matches_brute_force() {
        let b = OracleBudget::default();
        for s in 0..40u64 {
            let p = [0.3, 0.5, 0.7, 0.9][s as usize % 4];
            let g = generate_gnp(14, p, s).unwrap();
            let c = max_clique_exact(&g, &b).unwrap();
            assert!(g.is_clique(&c));
            assert_eq!(c.len(), brute_force_omega(&g), "seed {s}");
        }
    }

    #[test]
    fn multiword_graphs() {
        let b = OracleBudget::default();
        for s in 0..5u64 {
            let g = generate_gnp(200, 0.5, s).unwrap();
            let c = max_clique_exact(&g, &b).unwrap();
            assert!(g.is_clique(&c));
            assert!((7..=12).contains(&c.len()));
        }
    }
}
