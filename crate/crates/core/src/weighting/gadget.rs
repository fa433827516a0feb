//! Edge gadgets: signed weightings of a 5-clique that put weighted degree 1
//! on one chosen pair and 0 on every other pair.

use itertools::Itertools;
use num_traits::Zero;

use super::Weighting;
use crate::error::{Error, Result};
use crate::hypergraph::{is_clique, Hypergraph, Vertex};
use crate::rational::{rat, Rational};

/// `ψ_{K,p}(e)` in twelfths, from `|e ∩ p|`.
#[inline]
pub(crate) fn gadget_twelfths(overlap: usize) -> i64 {
    match overlap {
        0 | 2 => 4,
        1 => -2,
        _ => unreachable!("a pair meets a triple in at most two vertices"),
    }
}

pub(crate) fn gadget_value(edge: &[Vertex], pair: [Vertex; 2]) -> Rational {
    let overlap = edge.iter().filter(|v| pair.contains(v)).count();
    rat(gadget_twelfths(overlap), 12)
}

fn validate(h: &Hypergraph, clique: &[Vertex], pair: [Vertex; 2]) -> Result<Vec<Vertex>> {
    if h.uniformity() != 3 {
        return Err(Error::Uniformity {
            op: "edge gadget",
            expected: 3,
            found: h.uniformity(),
        });
    }
    let mut k = clique.to_vec();
    k.sort_unstable();
    if k.len() != 5 {
        return Err(Error::CliqueSize(k.len()));
    }
    if !is_clique(h, &k) {
        return Err(Error::NotAClique(k));
    }
    if pair[0] == pair[1] || !pair.iter().all(|v| k.contains(v)) {
        return Err(Error::PairNotContained { pair, set: k });
    }
    Ok(k)
}

/// `ψ_{K,p}`: `+1/3` on the edge of `K` missing `p`, `-1/6` on the six edges
/// meeting `p` once and `+1/3` on the three edges containing `p`.
pub fn edge_gadget(h: &Hypergraph, clique: &[Vertex], pair: [Vertex; 2]) -> Result<Weighting> {
    let k = validate(h, clique, pair)?;
    let weights = k
        .iter()
        .copied()
        .combinations(3)
        .map(|e| {
            let w = gadget_value(&e, pair);
            (e, w)
        })
        .collect();
    Ok(Weighting::from_map_unchecked(weights))
}

/// `deg^{ψ_{K,p}}(q)`.
pub fn gadget_degree(
    h: &Hypergraph,
    clique: &[Vertex],
    pair: [Vertex; 2],
    q: [Vertex; 2],
) -> Result<Rational> {
    let psi = edge_gadget(h, clique, pair)?;
    if !h.in_shadow(&q) {
        return Err(Error::NotInShadow(q.to_vec()));
    }
    Ok(h
        .neighborhood(&q)
        .iter()
        .map(|&v| {
            let mut e = vec![q[0], q[1], v];
            e.sort_unstable();
            psi.weight(&e)
        })
        .fold(Rational::zero(), |acc, w| acc + w))
}
