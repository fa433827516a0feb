//! Extremal and random instances.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};

/// A hypergraph together with a partition of its vertex set into blocks of
/// consecutive ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedHypergraph {
    pub hypergraph: Hypergraph,
    pub parts: Vec<Vec<Vertex>>,
}

impl PartitionedHypergraph {
    pub fn from_sizes(hypergraph: Hypergraph, sizes: &[usize]) -> Result<Self> {
        let total: usize = sizes.iter().sum();
        if total != hypergraph.vertex_count() {
            return Err(Error::InvalidPartition(format!(
                "part sizes sum to {total}, hypergraph has {} vertices",
                hypergraph.vertex_count()
            )));
        }
        Ok(Self {
            hypergraph,
            parts: blocks(sizes),
        })
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    /// Part index of every vertex.
    pub fn labels(&self) -> Vec<usize> {
        let mut label = vec![0; self.hypergraph.vertex_count()];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                label[v as usize] = i;
            }
        }
        label
    }
}

fn blocks(sizes: &[usize]) -> Vec<Vec<Vertex>> {
    let mut next = 0;
    sizes
        .iter()
        .map(|&s| {
            let part = (next..next + s as Vertex).collect();
            next += s as Vertex;
            part
        })
        .collect()
}

pub fn complete_hypergraph(r: usize, n: usize) -> Result<Hypergraph> {
    if r < 2 {
        return Err(Error::InvalidUniformity(r));
    }
    if n < r {
        return Err(Error::TooFewVertices { n, min: r });
    }
    Hypergraph::new(r, n, (0..n as Vertex).combinations(r))
}

/// The Fano plane, the Steiner triple system on 7 points.
pub fn fano_plane() -> Hypergraph {
    Hypergraph::new(
        3,
        7,
        [
            [0, 1, 2],
            [0, 3, 4],
            [0, 5, 6],
            [1, 3, 5],
            [1, 4, 6],
            [2, 3, 6],
            [2, 4, 5],
        ],
    )
    .expect("valid edge list")
}

/// All `r`-sets except those meeting each of the `r` parts exactly once.
fn without_transversals(r: usize, sizes: &[usize]) -> Result<PartitionedHypergraph> {
    let n: usize = sizes.iter().sum();
    let parts = blocks(sizes);
    let mut label = vec![0usize; n];
    for (i, part) in parts.iter().enumerate() {
        for &v in part {
            label[v as usize] = i;
        }
    }
    let edges = (0..n as Vertex).combinations(r).filter(|e| {
        let mut seen = vec![false; sizes.len()];
        e.iter().for_each(|&v| seen[label[v as usize]] = true);
        !(sizes.len() == r && seen.iter().all(|&s| s))
    });
    let hypergraph = Hypergraph::new(r, n, edges)?;
    Ok(PartitionedHypergraph { hypergraph, parts })
}

/// Equitable part sizes `n1 <= n2 <= n3`, following the case split
/// `(k-1, k, k)`, `(k, k, k)`, `(k, k, k+1)` for `n = 3k-1, 3k, 3k+1`.
pub fn equitable_tripartition(n: usize) -> [usize; 3] {
    let k = (n + 1) / 3;
    match n as isize - 3 * k as isize {
        -1 => [k - 1, k, k],
        0 => [k, k, k],
        _ => [k, k, k + 1],
    }
}

/// The complete 3-graph minus all transversal triples of an equitable
/// tripartition. It has no perfect fractional Steiner triple system.
pub fn space_barrier_tripartite(n: usize) -> Result<PartitionedHypergraph> {
    if n < 5 {
        return Err(Error::TooFewVertices { n, min: 5 });
    }
    without_transversals(3, &equitable_tripartition(n))
}

/// The complete `r`-graph minus all transversal edges of an `r`-partition
/// whose first `r-1` parts have odd size. It has no `(r-1, r, n)`-Steiner
/// system.
pub fn parity_blocker(r: usize, part_sizes: &[usize]) -> Result<PartitionedHypergraph> {
    if r < 2 {
        return Err(Error::InvalidUniformity(r));
    }
    let bad = |msg: String| Err(Error::InvalidPartition(msg));
    if part_sizes.len() != r {
        return bad(format!("expected {r} parts, got {}", part_sizes.len()));
    }
    if let Some(i) = part_sizes[..r - 1].iter().position(|s| s % 2 == 0) {
        return bad(format!("part {} has even size {}", i + 1, part_sizes[i]));
    }
    let max = part_sizes.iter().max().copied().unwrap_or(0);
    let min = part_sizes.iter().min().copied().unwrap_or(0);
    if max - min > 2 {
        return bad(format!("part sizes differ by {} > 2", max - min));
    }
    let n: usize = part_sizes.iter().sum();
    if n < r {
        return bad(format!("{n} vertices is fewer than r = {r}"));
    }
    without_transversals(r, part_sizes)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeTupleCount {
    pub edge: Vec<Vertex>,
    pub covered: u64,
}

/// Odd/even counting certificate against integral `(r-1, r, n)`-Steiner
/// systems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityCertificate {
    pub uniformity: usize,
    pub part_sizes: Vec<usize>,
    /// Product of the first `r-1` part sizes.
    pub m: u64,
    pub m_odd: bool,
    pub edge_counts: Vec<EdgeTupleCount>,
    /// Edges covering a number of transversal tuples other than 0 or 2.
    pub offending_edges: Vec<Vec<Vertex>>,
    pub verdict: bool,
}

pub fn parity_certificate(ph: &PartitionedHypergraph) -> Result<ParityCertificate> {
    let r = ph.hypergraph.uniformity();
    if ph.parts.len() < r - 1 {
        return Err(Error::InvalidPartition(format!(
            "need at least {} parts, got {}",
            r - 1,
            ph.parts.len()
        )));
    }
    let label = ph.labels();
    let sizes = ph.part_sizes();
    let m: u64 = sizes[..r - 1].iter().map(|&s| s as u64).product();
    let edge_counts: Vec<EdgeTupleCount> = ph
        .hypergraph
        .edges()
        .iter()
        .map(|e| {
            let mut hits = vec![0u64; r - 1];
            for &v in e {
                if let Some(h) = hits.get_mut(label[v as usize]) {
                    *h += 1;
                }
            }
            EdgeTupleCount {
                edge: e.clone(),
                covered: hits.iter().product(),
            }
        })
        .collect();
    let offending_edges: Vec<Vec<Vertex>> = edge_counts
        .iter()
        .filter(|c| c.covered != 0 && c.covered != 2)
        .map(|c| c.edge.clone())
        .collect();
    let m_odd = m % 2 == 1;
    Ok(ParityCertificate {
        uniformity: r,
        part_sizes: sizes,
        m,
        m_odd,
        verdict: m_odd && offending_edges.is_empty(),
        edge_counts,
        offending_edges,
    })
}

/// Deletes edges of `K_n^(3)` in a seeded pseudorandom order, skipping any
/// deletion that would push a pair's codegree below `floor`.
pub fn random_min_codegree(n: usize, floor: usize, seed: u64) -> Result<Hypergraph> {
    if n < 3 {
        return Err(Error::TooFewVertices { n, min: 3 });
    }
    if floor > n - 2 {
        return Err(Error::FloorTooLarge { floor, max: n - 2 });
    }
    let mut order: Vec<Vec<Vertex>> = (0..n as Vertex).combinations(3).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut codegree = vec![n - 2; n * n];
    let idx = |a: Vertex, b: Vertex| a as usize * n + b as usize;
    let mut kept = Vec::with_capacity(order.len());
    for e in order {
        let pairs = [(e[0], e[1]), (e[0], e[2]), (e[1], e[2])];
        if pairs.iter().all(|&(a, b)| codegree[idx(a, b)] > floor) {
            for (a, b) in pairs {
                codegree[idx(a, b)] -= 1;
            }
        } else {
            kept.push(e);
        }
    }
    Hypergraph::new(3, n, kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_counts() {
        assert_eq!(complete_hypergraph(3, 5).unwrap().edge_count(), 10);
        assert_eq!(complete_hypergraph(3, 7).unwrap().edge_count(), 35);
        assert_eq!(complete_hypergraph(3, 4).unwrap().edge_count(), 4);
        assert!(complete_hypergraph(3, 2).is_err());
    }

    #[test]
    fn tripartition_table() {
        assert_eq!(equitable_tripartition(5), [1, 2, 2]);
        assert_eq!(equitable_tripartition(6), [2, 2, 2]);
        assert_eq!(equitable_tripartition(7), [2, 2, 3]);
        assert_eq!(equitable_tripartition(8), [2, 3, 3]);
        assert_eq!(equitable_tripartition(9), [3, 3, 3]);
        assert_eq!(equitable_tripartition(10), [3, 3, 4]);
    }

    #[test]
    fn space_barrier_examples() {
        let ph = space_barrier_tripartite(9).unwrap();
        assert_eq!(ph.hypergraph.edge_count(), 57);
        assert_eq!(ph.hypergraph.codegree_stats().min_codegree, 4);
        assert_eq!(space_barrier_tripartite(6).unwrap().hypergraph.edge_count(), 12);
        assert!(space_barrier_tripartite(4).is_err());
    }

    #[test]
    fn space_barrier_codegree_bound_and_complete_shadow() {
        for n in 5..=30usize {
            let h = space_barrier_tripartite(n).unwrap().hypergraph;
            let stats = h.codegree_stats();
            // 3 * delta >= 2n - 8
            assert!(3 * stats.min_codegree + 8 >= 2 * n, "n = {n}");
            assert_eq!(stats.shadow_size as u128, crate::hypergraph::binomial(n, 2));
        }
    }

    #[test]
    fn parity_blocker_examples() {
        let ph = parity_blocker(3, &[3, 3, 3]).unwrap();
        assert_eq!(ph.hypergraph.vertex_count(), 9);
        let cert = parity_certificate(&ph).unwrap();
        assert_eq!(cert.m, 9);
        assert!(cert.verdict);

        let ph = parity_blocker(4, &[3, 3, 3, 4]).unwrap();
        assert_eq!(ph.hypergraph.vertex_count(), 13);
        let cert = parity_certificate(&ph).unwrap();
        assert_eq!(cert.m, 27);
        assert!(cert.verdict);

        assert!(matches!(
            parity_blocker(3, &[2, 3, 3]),
            Err(Error::InvalidPartition(msg)) if msg.contains("even")
        ));
        assert!(parity_blocker(3, &[1, 3, 5]).is_err());
        assert!(parity_blocker(3, &[3, 3]).is_err());
    }

    #[test]
    fn complete_graph_fails_parity_check() {
        let h = complete_hypergraph(3, 9).unwrap();
        let ph = PartitionedHypergraph::from_sizes(h, &[3, 3, 3]).unwrap();
        let cert = parity_certificate(&ph).unwrap();
        assert!(!cert.verdict);
        assert!(cert.edge_counts.iter().any(|c| c.covered == 1));
    }

    #[test]
    fn random_generator_respects_floor() {
        assert!(matches!(
            random_min_codegree(10, 9, 1),
            Err(Error::FloorTooLarge { floor: 9, max: 8 })
        ));
        assert_eq!(random_min_codegree(10, 8, 1).unwrap(), complete_hypergraph(3, 10).unwrap());
        let h = random_min_codegree(12, 7, 42).unwrap();
        assert!(h.edge_count() < 220);
        assert!(h.codegree_stats().min_codegree >= 7);
        assert_eq!(h, random_min_codegree(12, 7, 42).unwrap());
    }
}
