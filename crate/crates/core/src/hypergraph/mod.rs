//! Uniform hypergraphs on dense vertex identifiers `0..n`.
//!
//! Edges are stored sorted, in lexicographic order. Every `(r-1)`-subset of
//! an edge is indexed with the vertices that extend it to an edge, and for
//! 3-graphs the pair neighbourhoods are additionally kept as bitsets, which is
//! what the clique and co-neighbourhood queries run on.

mod cliques;
pub mod format;

use std::collections::{BTreeMap, HashSet};

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;

pub use cliques::{cliques, is_clique, ordered_cliques, Containment, OrderedClique};

pub type Vertex = u32;

#[derive(Clone, Debug)]
pub struct Hypergraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<Vertex>>,
    edge_set: HashSet<Vec<Vertex>>,
    incidence: BTreeMap<Vec<Vertex>, Vec<Vertex>>,
    pairs: Option<PairNeighborhoods>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

#[derive(Clone, Debug)]
struct PairNeighborhoods {
    n: usize,
    sets: Vec<FixedBitSet>,
}

impl PairNeighborhoods {
    fn build(n: usize, edges: &[Vec<Vertex>]) -> Self {
        let mut sets = vec![FixedBitSet::with_capacity(n); n * n];
        for e in edges {
            let (a, b, c) = (e[0] as usize, e[1] as usize, e[2] as usize);
            for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
                sets[x * n + y].insert(z);
                sets[y * n + x].insert(z);
            }
        }
        Self { n, sets }
    }

    #[inline]
    fn get(&self, a: Vertex, b: Vertex) -> &FixedBitSet {
        &self.sets[a as usize * self.n + b as usize]
    }
}

/// Minimum codegree statistics of a hypergraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodegreeStats {
    /// Minimum degree over all `(r-1)`-subsets of the vertex set.
    pub min_codegree: usize,
    /// Minimum degree over shadow members; `None` when the shadow is empty.
    pub essential_min_codegree: Option<usize>,
    /// Minimum vertex degree in the shadow graph (3-graphs only).
    pub shadow_min_degree: Option<usize>,
    pub shadow_size: usize,
}

pub fn build_hypergraph<I, E>(r: usize, n: usize, edges: I) -> Result<Hypergraph>
where
    I: IntoIterator<Item = E>,
    E: AsRef<[Vertex]>,
{
    Hypergraph::new(r, n, edges)
}

impl Hypergraph {
    pub fn new<I, E>(r: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        if r < 2 {
            return Err(Error::InvalidUniformity(r));
        }
        let mut sorted = Vec::new();
        let mut edge_set = HashSet::new();
        for (index, edge) in edges.into_iter().enumerate() {
            let edge = edge.as_ref();
            if edge.len() != r {
                return Err(Error::EdgeArity {
                    index,
                    expected: r,
                    found: edge.len(),
                });
            }
            if let Some(&vertex) = edge.iter().find(|&&v| v as usize >= n) {
                return Err(Error::VertexOutOfRange { vertex, n });
            }
            let mut e = edge.to_vec();
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex { index });
            }
            if !edge_set.insert(e.clone()) {
                return Err(Error::DuplicateEdge(e));
            }
            sorted.push(e);
        }
        sorted.sort_unstable();
        let incidence = build_incidence(&sorted);
        let pairs = (r == 3).then(|| PairNeighborhoods::build(n, &sorted));
        Ok(Self {
            r,
            n,
            edges: sorted,
            edge_set,
            incidence,
            pairs,
        })
    }

    pub fn uniformity(&self) -> usize {
        self.r
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n as Vertex
    }

    /// Whether the sorted or unsorted vertex list is an edge.
    pub fn contains_edge(&self, edge: &[Vertex]) -> bool {
        if edge.len() != self.r {
            return false;
        }
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edge_set.contains(&e)
    }

    pub(crate) fn contains_sorted_edge(&self, edge: &[Vertex]) -> bool {
        self.edge_set.contains(edge)
    }

    pub fn incidence(&self) -> &BTreeMap<Vec<Vertex>, Vec<Vertex>> {
        &self.incidence
    }

    /// Recomputes the incidence index from the edge list.
    pub fn rebuild_incidence(&self) -> BTreeMap<Vec<Vertex>, Vec<Vertex>> {
        build_incidence(&self.edges)
    }

    /// `N(p)`: vertices extending the `(r-1)`-set `p` to an edge.
    pub fn neighborhood(&self, set: &[Vertex]) -> &[Vertex] {
        let mut key = set.to_vec();
        key.sort_unstable();
        self.incidence.get(&key).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, set: &[Vertex]) -> usize {
        if set.len() + 1 == self.r {
            return self.neighborhood(set).len();
        }
        self.edges
            .iter()
            .filter(|e| set.iter().all(|v| e.binary_search(v).is_ok()))
            .count()
    }

    /// The `(r-1)`-sets of positive degree, lexicographically ordered.
    pub fn shadow(&self) -> Vec<Vec<Vertex>> {
        self.incidence.keys().cloned().collect()
    }

    pub fn in_shadow(&self, set: &[Vertex]) -> bool {
        set.len() + 1 == self.r && !self.neighborhood(set).is_empty()
    }

    pub fn codegree_stats(&self) -> CodegreeStats {
        let total = binomial(self.n, self.r - 1);
        let shadow_size = self.incidence.len();
        let essential = self.incidence.values().map(Vec::len).min();
        let min_codegree = if (shadow_size as u128) < total {
            0
        } else {
            essential.unwrap_or(0)
        };
        let shadow_min_degree = (self.r == 3).then(|| {
            let mut deg = vec![0usize; self.n];
            for pair in self.incidence.keys() {
                deg[pair[0] as usize] += 1;
                deg[pair[1] as usize] += 1;
            }
            deg.into_iter().min().unwrap_or(0)
        });
        CodegreeStats {
            min_codegree,
            essential_min_codegree: essential,
            shadow_min_degree,
            shadow_size,
        }
    }

    pub fn essential_min_codegree(&self) -> Result<usize> {
        self.codegree_stats()
            .essential_min_codegree
            .ok_or(Error::EmptyShadow)
    }

    /// A shadow pair of minimum codegree, ties broken lexicographically.
    pub fn min_codegree_pair(&self) -> Option<([Vertex; 2], usize)> {
        if self.r != 3 {
            return None;
        }
        self.incidence
            .iter()
            .min_by_key(|(_, nb)| nb.len())
            .map(|(p, nb)| ([p[0], p[1]], nb.len()))
    }

    fn require_three(&self, op: &'static str) -> Result<&PairNeighborhoods> {
        self.pairs.as_ref().ok_or(Error::Uniformity {
            op,
            expected: 3,
            found: self.r,
        })
    }

    /// Bitset of `N(ab)` for a 3-graph.
    pub(crate) fn pair_neighborhood(&self, a: Vertex, b: Vertex) -> &FixedBitSet {
        self.pairs
            .as_ref()
            .expect("pair neighbourhoods exist for 3-graphs")
            .get(a, b)
    }

    /// `CN(P)`, the common co-neighbourhood of a family of pairs. The empty
    /// family yields the whole vertex set.
    pub fn common_coneighborhood_of_pairs(&self, pairs: &[[Vertex; 2]]) -> Result<Vec<Vertex>> {
        let table = self.require_three("common co-neighbourhood")?;
        for p in pairs {
            for &v in p {
                if v as usize >= self.n {
                    return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
                }
            }
        }
        let mut acc = FixedBitSet::with_capacity(self.n);
        acc.insert_range(..);
        for p in pairs {
            acc.intersect_with(table.get(p[0], p[1]));
        }
        Ok(acc.ones().map(|v| v as Vertex).collect())
    }

    /// `CN(S) = CN(S^(2))`.
    pub fn common_coneighborhood(&self, set: &[Vertex]) -> Result<Vec<Vertex>> {
        let pairs: Vec<[Vertex; 2]> = set
            .iter()
            .tuple_combinations()
            .map(|(&a, &b)| [a, b])
            .collect();
        self.common_coneighborhood_of_pairs(&pairs)
    }

    /// `|CN(S)|` without allocating. 3-graphs only.
    pub(crate) fn cn_count(&self, set: &[Vertex]) -> usize {
        let table = self.pairs.as_ref().expect("3-graph");
        if set.len() < 2 {
            return self.n;
        }
        let mut sets: [&FixedBitSet; 10] = [table.get(set[0], set[1]); 10];
        let mut k = 0;
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                sets[k] = table.get(set[i], set[j]);
                k += 1;
            }
        }
        let sets = &sets[..k];
        let blocks = sets[0].as_slice().len();
        let mut count = 0;
        for w in 0..blocks {
            let mut acc = sets[0].as_slice()[w];
            for s in &sets[1..] {
                acc &= s.as_slice()[w];
            }
            count += acc.count_ones() as usize;
        }
        count
    }

    pub fn cn_density(&self, set: &[Vertex]) -> Result<Rational> {
        if self.n == 0 {
            return Err(Error::NoVertices);
        }
        let cn = self.common_coneighborhood(set)?;
        Ok(Rational::new(cn.len().into(), self.n.into()))
    }

    pub fn cn_density_of_pairs(&self, pairs: &[[Vertex; 2]]) -> Result<Rational> {
        if self.n == 0 {
            return Err(Error::NoVertices);
        }
        let cn = self.common_coneighborhood_of_pairs(pairs)?;
        Ok(Rational::new(cn.len().into(), self.n.into()))
    }
}

fn build_incidence(edges: &[Vec<Vertex>]) -> BTreeMap<Vec<Vertex>, Vec<Vertex>> {
    let mut incidence: BTreeMap<Vec<Vertex>, Vec<Vertex>> = BTreeMap::new();
    for e in edges {
        for skip in 0..e.len() {
            let key: Vec<Vertex> = e
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect();
            incidence.entry(key).or_default().push(e[skip]);
        }
    }
    for nb in incidence.values_mut() {
        nb.sort_unstable();
    }
    incidence
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete_hypergraph, space_barrier_tripartite};
    use crate::rational::{int, rat};

    fn k5() -> Hypergraph {
        complete_hypergraph(3, 5).unwrap()
    }

    #[test]
    fn builds_minimal_instance() {
        let h = build_hypergraph(3, 3, [[0, 1, 2]]).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.vertex_count(), 3);
    }

    #[test]
    fn builds_complete_k5() {
        let all: Vec<Vec<u32>> = (0..5u32).combinations(3).collect();
        let h = build_hypergraph(3, 5, &all).unwrap();
        assert_eq!(h.edge_count(), 10);
        assert_eq!(h, k5());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            build_hypergraph(3, 5, [[0, 1, 2], [0, 1, 2]]),
            Err(Error::DuplicateEdge(_))
        ));
        assert!(matches!(
            build_hypergraph(3, 5, [[2, 1, 0], [0, 1, 2]]),
            Err(Error::DuplicateEdge(_))
        ));
        assert!(matches!(
            build_hypergraph(3, 5, [vec![0, 1]]),
            Err(Error::EdgeArity { .. })
        ));
        assert!(matches!(
            build_hypergraph(3, 5, [[0, 1, 5]]),
            Err(Error::VertexOutOfRange { vertex: 5, .. })
        ));
        assert!(matches!(
            build_hypergraph(3, 5, [[0, 1, 1]]),
            Err(Error::RepeatedVertex { .. })
        ));
        assert!(matches!(
            build_hypergraph(1, 5, [[0]]),
            Err(Error::InvalidUniformity(1))
        ));
    }

    #[test]
    fn shadow_examples() {
        assert_eq!(k5().shadow().len(), 10);
        let h = build_hypergraph(3, 5, [[0, 1, 2]]).unwrap();
        assert_eq!(h.shadow(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let empty = build_hypergraph(3, 5, Vec::<[u32; 3]>::new()).unwrap();
        assert!(empty.shadow().is_empty());
    }

    #[test]
    fn codegree_examples() {
        let s = k5().codegree_stats();
        assert_eq!(s.min_codegree, 3);
        assert_eq!(s.essential_min_codegree, Some(3));
        assert_eq!(s.shadow_min_degree, Some(4));

        let single = build_hypergraph(3, 5, [[0, 1, 2]]).unwrap();
        let s = single.codegree_stats();
        assert_eq!(s.min_codegree, 0);
        assert_eq!(s.essential_min_codegree, Some(1));

        let empty = build_hypergraph(3, 4, Vec::<[u32; 3]>::new()).unwrap();
        assert!(matches!(empty.essential_min_codegree(), Err(Error::EmptyShadow)));
    }

    #[test]
    fn space_barrier_codegree_matches_brute_force() {
        let ph = space_barrier_tripartite(9).unwrap();
        let h = &ph.hypergraph;
        // brute-force count over all pairs and all third vertices
        let mut min = usize::MAX;
        for a in 0..9u32 {
            for b in a + 1..9 {
                let c = (0..9u32)
                    .filter(|&c| c != a && c != b && h.contains_edge(&[a, b, c]))
                    .count();
                min = min.min(c);
            }
        }
        assert_eq!(min, 4);
        assert_eq!(h.codegree_stats().min_codegree, 4);
    }

    #[test]
    fn common_coneighborhood_examples() {
        let h = k5();
        assert_eq!(h.common_coneighborhood(&[0, 1]).unwrap(), vec![2, 3, 4]);
        assert_eq!(h.common_coneighborhood(&[0, 1, 2, 3]).unwrap(), vec![4]);
        assert_eq!(h.common_coneighborhood_of_pairs(&[]).unwrap().len(), 5);

        let ph = space_barrier_tripartite(6).unwrap();
        let (a, b) = (ph.parts[0][0], ph.parts[1][0]);
        assert_eq!(ph.hypergraph.common_coneighborhood(&[a, b]).unwrap().len(), 2);
    }

    #[test]
    fn cn_density_examples() {
        let h = k5();
        assert_eq!(h.cn_density(&[0, 1]).unwrap(), rat(3, 5));
        assert_eq!(h.cn_density_of_pairs(&[]).unwrap(), int(1));
        assert_eq!(h.cn_density(&[0, 1, 2, 3]).unwrap(), rat(1, 5));
        let empty = build_hypergraph(3, 0, Vec::<[u32; 3]>::new()).unwrap();
        assert!(matches!(empty.cn_density(&[]), Err(Error::NoVertices)));
        assert!(empty.common_coneighborhood(&[]).unwrap().is_empty());
    }

    #[test]
    fn cn_on_non_three_graph_is_rejected() {
        let h = complete_hypergraph(4, 5).unwrap();
        assert!(matches!(
            h.common_coneighborhood(&[0, 1]),
            Err(Error::Uniformity { .. })
        ));
    }

    #[test]
    fn cn_count_agrees_with_set_version() {
        let ph = space_barrier_tripartite(8).unwrap();
        let h = &ph.hypergraph;
        for set in (0..8u32).combinations(4) {
            assert_eq!(h.cn_count(&set), h.common_coneighborhood(&set).unwrap().len());
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(9, 3), 84);
        assert_eq!(binomial(2, 3), 0);
    }
}
