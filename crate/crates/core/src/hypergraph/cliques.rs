use itertools::Itertools;
use serde::Serialize;

use super::{Hypergraph, Vertex};
use crate::error::{Error, Result};

const MAX_CLIQUE: usize = 5;

/// A tuple of distinct vertices whose underlying set spans a clique.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OrderedClique(Vec<Vertex>);

impl OrderedClique {
    pub fn new(h: &Hypergraph, vertices: &[Vertex]) -> Result<Self> {
        if !(2..=MAX_CLIQUE).contains(&vertices.len()) {
            return Err(Error::CliqueSize(vertices.len()));
        }
        if !is_clique(h, vertices) {
            return Err(Error::NotAClique(vertices.to_vec()));
        }
        Ok(Self(vertices.to_vec()))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertex_set(&self) -> Vec<Vertex> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }

    pub fn is_subsequence_of(&self, other: &[Vertex]) -> bool {
        is_subsequence(&self.0, other)
    }
}

/// What an enumerated ordered clique must contain.
#[derive(Clone, Copy, Debug)]
pub enum Containment<'a> {
    /// Vertex-set containment.
    Set(&'a [Vertex]),
    /// Subsequence containment.
    Ordered(&'a [Vertex]),
}

pub(crate) fn is_subsequence(needle: &[Vertex], hay: &[Vertex]) -> bool {
    let mut it = hay.iter();
    needle.iter().all(|v| it.any(|w| w == v))
}

/// Whether `set` consists of distinct vertices with every `r`-subset an edge.
pub fn is_clique(h: &Hypergraph, set: &[Vertex]) -> bool {
    let mut s = set.to_vec();
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) || s.iter().any(|&v| v as usize >= h.n) {
        return false;
    }
    s.iter()
        .copied()
        .combinations(h.r)
        .all(|e| h.contains_sorted_edge(&e))
}

fn extends(h: &Hypergraph, current: &[Vertex], v: Vertex) -> bool {
    if h.r == 3 {
        return current
            .iter()
            .tuple_combinations()
            .all(|(&a, &b)| h.pair_neighborhood(a, b).contains(v as usize));
    }
    current.iter().copied().combinations(h.r - 1).all(|mut t| {
        t.push(v);
        t.sort_unstable();
        h.contains_sorted_edge(&t)
    })
}

/// All `k`-cliques (as sorted vertex sets) containing `containing`.
pub fn cliques(h: &Hypergraph, k: usize, containing: &[Vertex]) -> Result<Vec<Vec<Vertex>>> {
    if !(2..=MAX_CLIQUE).contains(&k) {
        return Err(Error::CliqueSize(k));
    }
    let mut base = containing.to_vec();
    base.sort_unstable();
    base.dedup();
    if base.len() > k {
        return Ok(Vec::new());
    }
    if !is_clique(h, &base) {
        return Err(Error::NotAClique(base));
    }
    let candidates: Vec<Vertex> = h.vertices().filter(|v| !base.contains(v)).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    grow(h, &base, &candidates, 0, k - base.len(), &mut chosen, &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort_unstable();
    Ok(out)
}

fn grow(
    h: &Hypergraph,
    base: &[Vertex],
    candidates: &[Vertex],
    start: usize,
    need: usize,
    chosen: &mut Vec<Vertex>,
    out: &mut Vec<Vec<Vertex>>,
) {
    if need == 0 {
        out.push(base.iter().chain(chosen.iter()).copied().collect());
        return;
    }
    for i in start..candidates.len() {
        if candidates.len() - i < need {
            break;
        }
        let v = candidates[i];
        let current: Vec<Vertex> = base.iter().chain(chosen.iter()).copied().collect();
        if extends(h, &current, v) {
            chosen.push(v);
            grow(h, base, candidates, i + 1, need - 1, chosen, out);
            chosen.pop();
        }
    }
}

/// Ordered `s`-cliques containing the argument, in lexicographic order.
pub fn ordered_cliques(
    h: &Hypergraph,
    s: usize,
    containing: Containment<'_>,
) -> Result<Vec<OrderedClique>> {
    let (set, order) = match containing {
        Containment::Set(set) => (set.to_vec(), None),
        Containment::Ordered(tuple) => (tuple.to_vec(), Some(tuple)),
    };
    let mut out = Vec::new();
    for clique in cliques(h, s, &set)? {
        for perm in clique.iter().copied().permutations(s) {
            if order.map_or(true, |o| is_subsequence(o, &perm)) {
                out.push(OrderedClique(perm));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}
