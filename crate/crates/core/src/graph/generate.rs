//! Seeded G(n, p) generation.
//!
//! The pair stream is fixed and must not change:
//!
//! * Pairs are visited in canonical order `(0,1), (0,2), …, (0,n-1), (1,2), …,
//!   (n-2,n-1)`.
//! * Random words come from `ChaCha8Rng::seed_from_u64(seed)` via `next_u64`.
//! * `p == 0` and `p == 1` consume no words (empty and complete graphs).
//! * `p == 1/2` consumes one word per 64 pairs: the pairs take its bits in
//!   order from least to most significant, a set bit meaning "edge".
//! * Any other `p` consumes one word `x` per pair, with an edge iff
//!   `x < floor(p * 2^64)`.

use rand_chacha::ChaCha8Rng;
use rand_core::RngCore;

use super::{words_for, Graph, Provenance};
use crate::error::{Error, Result};
use crate::seed;

enum PairBits {
    Half { rng: ChaCha8Rng, buf: u64, left: u32 },
    Threshold { rng: ChaCha8Rng, cutoff: u64 },
}

#[inline]
fn low_mask(count: u32) -> u64 {
    if count >= 64 {
        u64::MAX
    } else {
        (1u64 << count) - 1
    }
}

impl PairBits {
    /// Decisions for the next `count` (≤ 64) pairs, first pair in bit 0.
    fn take(&mut self, count: u32) -> u64 {
        debug_assert!(count <= 64);
        match self {
            PairBits::Half { rng, buf, left } => {
                if *left >= count {
                    let out = *buf & low_mask(count);
                    *buf = if count == 64 { 0 } else { *buf >> count };
                    *left -= count;
                    out
                } else {
                    let need = count - *left;
                    let fresh = rng.next_u64();
                    let out = *buf | ((fresh & low_mask(need)) << *left);
                    *buf = if need == 64 { 0 } else { fresh >> need };
                    *left = 64 - need;
                    out
                }
            }
            PairBits::Threshold { rng, cutoff } => {
                let mut out = 0u64;
                for b in 0..count {
                    if rng.next_u64() < *cutoff {
                        out |= 1 << b;
                    }
                }
                out
            }
        }
    }
}

/// Samples G(n, p) from the documented stream for `seed`.
pub fn generate_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::arg("n must be at least 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::arg(format!("p = {p} is outside [0, 1]")));
    }
    let provenance = Some(Provenance { p, seed });
    if p == 0.0 {
        return Ok(Graph { provenance, ..Graph::empty(n)? });
    }
    if p == 1.0 {
        return Ok(Graph { provenance, ..Graph::complete(n)? });
    }

    let rng = seed::stream(seed);
    let mut bits = if p == 0.5 {
        PairBits::Half { rng, buf: 0, left: 0 }
    } else {
        // p < 1 here, so the product is below 2^64.
        PairBits::Threshold { rng, cutoff: (p * 18_446_744_073_709_551_616.0) as u64 }
    };

    let words = words_for(n);
    let mut rows = vec![0u64; n * words];
    for u in 0..n.saturating_sub(1) {
        let row = &mut rows[u * words..(u + 1) * words];
        let mut lo = u + 1;
        while lo < n {
            let w = lo / 64;
            let hi = n.min((w + 1) * 64);
            row[w] |= bits.take((hi - lo) as u32) << (lo % 64);
            lo = hi;
        }
    }
    mirror_upper(&mut rows, n, words);
    Ok(Graph::from_rows(n, rows, provenance))
}

/// ORs the transpose of the strict upper triangle into the lower triangle,
/// one 64×64 block at a time.
fn mirror_upper(rows: &mut [u64], n: usize, words: usize) {
    let mut block = [0u64; 64];
    for bi in 0..words {
        for bj in bi..words {
            for (r, slot) in block.iter_mut().enumerate() {
                let u = bi * 64 + r;
                *slot = if u < n { rows[u * words + bj] } else { 0 };
            }
            transpose64(&mut block);
            for (r, &bitsrow) in block.iter().enumerate() {
                let v = bj * 64 + r;
                if v < n {
                    rows[v * words + bi] |= bitsrow;
                }
            }
        }
    }
}

/// In-place transpose of a 64×64 bit matrix where entry `(r, c)` is bit `c`
/// of `a[r]`.
pub(crate) fn transpose64(a: &mut [u64; 64]) {
    let mut j = 32usize;
    let mut m: u64 = 0x0000_0000_FFFF_FFFF;
    while j != 0 {
        let mut k = 0usize;
        while k < 64 {
            let t = ((a[k] >> j) ^ a[k + j]) & m;
            a[k + j] ^= t;
            a[k] ^= t << j;
            k = (k + j + 1) & !j;
        }
        j >>= 1;
        m ^= m << j;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Pair-at-a-time reference using the same stream definition.
    fn reference(n: usize, p: f64, seed: u64) -> Vec<(usize, usize)> {
        let mut rng = seed::stream(seed);
        let mut edges = Vec::new();
        let (mut buf, mut left) = (0u64, 0u32);
        for u in 0..n {
            for v in u + 1..n {
                let edge = if p == 0.5 {
                    if left == 0 {
                        buf = rng.next_u64();
                        left = 64;
                    }
                    let b = buf & 1 == 1;
                    buf >>= 1;
                    left -= 1;
                    b
                } else {
                    rng.next_u64() < (p * 18_446_744_073_709_551_616.0) as u64
                };
                if edge {
                    edges.push((u, v));
                }
            }
        }
        edges
    }

    #[test]
    fn transpose_matches_naive() {
        let mut rng = seed::stream(11);
        let mut a = [0u64; 64];
        a.iter_mut().for_each(|w| *w = rng.next_u64());
        let orig = a;
        transpose64(&mut a);
        for (r, row) in a.iter().enumerate() {
            for (c, col) in orig.iter().enumerate() {
                assert_eq!((row >> c) & 1, (col >> r) & 1);
            }
        }
    }

    #[test]
    fn degenerate_probabilities() {
        assert_eq!(generate_gnp(5, 0.0, 7).unwrap().edge_count(), 0);
        assert_eq!(generate_gnp(5, 1.0, 7).unwrap().edge_count(), 10);
        assert_eq!(generate_gnp(1, 0.5, 7).unwrap().edge_count(), 0);
    }

    #[test]
    fn invalid_arguments() {
        assert!(generate_gnp(0, 0.5, 1).is_err());
        assert!(generate_gnp(5, -0.1, 1).is_err());
        assert!(generate_gnp(5, 1.5, 1).is_err());
        assert!(generate_gnp(5, f64::NAN, 1).is_err());
    }

    #[test]
    fn matches_pairwise_reference() {
        for &(n, p) in &[(1, 0.5), (2, 0.5), (63, 0.5), (64, 0.5), (65, 0.5), (130, 0.5), (200, 0.3), (97, 0.9)] {
            let g = generate_gnp(n, p, 99).unwrap();
            assert_eq!(g.edges().collect::<Vec<_>>(), reference(n, p, 99), "n={n} p={p}");
        }
    }

    #[test]
    fn symmetric_without_loops() {
        let g = generate_gnp(150, 0.5, 5).unwrap();
        for u in 0..150 {
            assert!(!g.has_edge(u, u));
            for v in 0..150 {
                assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
        // padding bits beyond n stay clear
        for u in 0..150 {
            assert_eq!(g.row(u)[2] >> (150 - 128), 0);
        }
    }

    #[test]
    fn regeneration_is_identical() {
        for n in [1usize, 17, 64, 129, 256] {
            let a = generate_gnp(n, 0.5, 1234).unwrap();
            let b = generate_gnp(n, 0.5, 1234).unwrap();
            for u in 0..n {
                for v in 0..n {
                    assert_eq!(a.has_edge(u, v), b.has_edge(u, v));
                }
            }
            assert_eq!(a, b);
        }
    }

    #[test]
    fn edge_count_statistics_n64() {
        // C(64,2) = 2016 pairs: mean 1008, sd sqrt(2016/4) ≈ 22.45.
        let sd = (2016.0f64 * 0.25).sqrt();
        let e42 = generate_gnp(64, 0.5, 42).unwrap().edge_count() as f64;
        assert!((e42 - 1008.0).abs() <= 4.0 * sd);

        let counts: Vec<f64> = (0..1000u64).map(|s| generate_gnp(64, 0.5, s).unwrap().edge_count() as f64).collect();
        let mean = counts.iter().sum::<f64>() / 1000.0;
        let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / 999.0;
        assert!((mean - 1008.0).abs() <= 4.0 * sd / 1000f64.sqrt(), "mean {mean}");
        // sample variance of 1000 normals: relative sd sqrt(2/999) ≈ 0.045
        assert!((var / 504.0 - 1.0).abs() <= 4.0 * (2.0f64 / 999.0).sqrt(), "var {var}");
    }

    #[test]
    fn empirical_edge_probability() {
        // 10 000 pairs from the first rows of a large graph.
        let g = generate_gnp(300, 0.5, 2024).unwrap();
        let hits = g.edges().take_while(|&(u, _)| u < 40).count();
        let pairs: usize = (0..40).map(|u| 299 - u).sum();
        assert!(pairs >= 10_000);
        let rate = hits as f64 / pairs as f64;
        assert!((rate - 0.5).abs() <= 4.0 * (0.25 / pairs as f64).sqrt(), "rate {rate}");
    }
}
