//! Clique weights, the weighting `w_H` and its split over edge orderings.
//!
//! `W(v1..vk) = ∏_{i=2}^{k} 1/|CN(v1..vi)|` weights an ordered clique by the
//! probability of growing it one vertex at a time, uniformly among the
//! extensions of each prefix. `w_H` averages the edge gadget `ψ_{K, v1v2}`
//! over ordered 5-cliques `K` with these weights.

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::gadget::{gadget_twelfths, gadget_value};
use super::{check_admissible, verify_fractional_sts, Admissibility, PairDegreeReport, Weighting};
use crate::error::{Error, Result};
use crate::hypergraph::{cliques, Hypergraph, OrderedClique, Vertex};
use crate::rational::{int, serde_rational, serde_rational_opt, Rational, ReciprocalTally};

fn validate_prefix_clique(h: &Hypergraph, k: &[Vertex]) -> Result<()> {
    if h.uniformity() != 3 {
        return Err(Error::Uniformity {
            op: "clique weights",
            expected: 3,
            found: h.uniformity(),
        });
    }
    if !(2..=4).contains(&k.len()) {
        return Err(Error::CliqueSize(k.len()));
    }
    OrderedClique::new(h, k).map(|_| ())
}

/// `W(K)` for an ordered clique on 2 to 4 vertices.
pub fn clique_weight(h: &Hypergraph, k: &[Vertex]) -> Result<Rational> {
    validate_prefix_clique(h, k)?;
    let mut den = BigInt::one();
    for i in 2..=k.len() {
        let c = h.cn_count(&k[..i]);
        if c == 0 {
            return Err(Error::NoExtension {
                pair: [k[0], k[1]],
                clique: k[..i].to_vec(),
            });
        }
        den *= c;
    }
    Ok(Rational::new(BigInt::one(), den))
}

/// `Ŵ(K) = ∏ 1/ĈN(v1..vi)`, which equals `n^{|K|-1} W(K)`.
pub fn scaled_clique_weight(h: &Hypergraph, k: &[Vertex]) -> Result<Rational> {
    validate_prefix_clique(h, k)?;
    let mut value = Rational::one();
    for i in 2..=k.len() {
        let density = h.cn_density(&k[..i])?;
        if density.is_zero() {
            return Err(Error::NoExtension {
                pair: [k[0], k[1]],
                clique: k[..i].to_vec(),
            });
        }
        value /= density;
    }
    Ok(value)
}

/// The ten position triples `i < j < k` of a 5-tuple, with the value of
/// `ψ_{K, v1v2}` on them in twelfths.
fn position_triples() -> [([usize; 3], i64); 10] {
    let mut out = [([0; 3], 0); 10];
    for (slot, t) in (0..5).combinations(3).enumerate() {
        let overlap = t.iter().filter(|&&i| i < 2).count();
        out[slot] = ([t[0], t[1], t[2]], gadget_twelfths(overlap));
    }
    out
}

/// Visits every ordered 5-clique `(v1..v5)` of a 3-graph together with
/// `|CN(v1v2)| · |CN(v1v2v3)| · |CN(v1..v4)|`, the reciprocal of
/// `W(v1..v4)`. Work is split over `v1`; accumulators come back in `v1`
/// order.
fn fold_ordered_k5<A, I, V>(h: &Hypergraph, init: I, visit: V) -> Vec<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &[Vertex; 5], u64) + Sync,
{
    let n = h.vertex_count();
    (0..n as Vertex)
        .into_par_iter()
        .map(|v1| {
            let mut acc = init();
            let mut s3 = FixedBitSet::with_capacity(n);
            let mut s4 = FixedBitSet::with_capacity(n);
            for v2 in (0..n as Vertex).filter(|&v| v != v1) {
                let s2 = h.pair_neighborhood(v1, v2);
                let c2 = s2.count_ones(..) as u64;
                if c2 == 0 {
                    continue;
                }
                for v3 in s2.ones() {
                    let v3 = v3 as Vertex;
                    s3.clone_from(s2);
                    s3.intersect_with(h.pair_neighborhood(v1, v3));
                    s3.intersect_with(h.pair_neighborhood(v2, v3));
                    let c3 = s3.count_ones(..) as u64;
                    for v4 in s3.ones() {
                        let v4 = v4 as Vertex;
                        s4.clone_from(&s3);
                        s4.intersect_with(h.pair_neighborhood(v1, v4));
                        s4.intersect_with(h.pair_neighborhood(v2, v4));
                        s4.intersect_with(h.pair_neighborhood(v3, v4));
                        let den = c2 * c3 * s4.count_ones(..) as u64;
                        for v5 in s4.ones() {
                            visit(&mut acc, &[v1, v2, v3, v4, v5 as Vertex], den);
                        }
                    }
                }
            }
            acc
        })
        .collect()
}

#[inline]
fn key(n: usize, t: [Vertex; 3]) -> u64 {
    (t[0] as u64 * n as u64 + t[1] as u64) * n as u64 + t[2] as u64
}

/// Exact per-triple sums of `(1/2) W(v1..v4) ψ_{K,v1v2}`, keyed by the
/// triple in the order it appears in `K` (`ordered`) or sorted.
fn tally_triples(h: &Hypergraph, ordered: bool) -> HashMap<u64, Rational> {
    let n = h.vertex_count();
    let triples = position_triples();
    let parts = fold_ordered_k5(
        h,
        HashMap::<(u64, u64), i64>::new,
        |acc, k, den| {
            for (pos, twelfths) in &triples {
                let mut t = [k[pos[0]], k[pos[1]], k[pos[2]]];
                if !ordered {
                    t.sort_unstable();
                }
                // (1/2) ψ is an integer number of twelfths
                *acc.entry((key(n, t), den)).or_insert(0) += twelfths / 2;
            }
        },
    );
    let mut per_key: HashMap<u64, ReciprocalTally> = HashMap::new();
    for part in parts {
        for ((k, den), coef) in part {
            per_key.entry(k).or_default().add(coef, den * 12);
        }
    }
    per_key
        .into_iter()
        .map(|(k, tally)| (k, tally.to_rational()))
        .collect()
}

/// `w_H(e) = (1/2) Σ_{K ∈ OK_5(H, e)} W(v1..v4) ψ_{V(K), v1v2}(e)` for every
/// edge. Every edge appears in the result, including those of weight 0.
pub fn weighting_w_h(h: &Hypergraph) -> Result<Weighting> {
    check_admissible(h, Admissibility::Structural)?;
    let n = h.vertex_count();
    let mut sums = tally_triples(h, false);
    let weights = h
        .edges()
        .iter()
        .map(|e| {
            let w = sums
                .remove(&key(n, [e[0], e[1], e[2]]))
                .unwrap_or_else(Rational::zero);
            (e.clone(), w)
        })
        .collect();
    Ok(Weighting::from_map_unchecked(weights))
}

/// Double precision `w_H` for instances where exact sums are not needed.
pub fn weighting_w_h_f64(h: &Hypergraph) -> Result<BTreeMap<Vec<Vertex>, f64>> {
    check_admissible(h, Admissibility::Structural)?;
    let n = h.vertex_count();
    let triples = position_triples();
    let parts = fold_ordered_k5(h, HashMap::<u64, f64>::new, |acc, k, den| {
        for (pos, twelfths) in &triples {
            let mut t = [k[pos[0]], k[pos[1]], k[pos[2]]];
            t.sort_unstable();
            *acc.entry(key(n, t)).or_insert(0.0) += *twelfths as f64 / (24.0 * den as f64);
        }
    });
    let mut sums: HashMap<u64, f64> = HashMap::new();
    for part in parts {
        for (k, v) in part {
            *sums.entry(k).or_insert(0.0) += v;
        }
    }
    Ok(h.edges()
        .iter()
        .map(|e| (e.clone(), sums.get(&key(n, [e[0], e[1], e[2]])).copied().unwrap_or(0.0)))
        .collect())
}

/// `w_H(O)` for every ordering `O` of every edge.
pub fn ordered_weights_all(h: &Hypergraph) -> Result<BTreeMap<[Vertex; 3], Rational>> {
    check_admissible(h, Admissibility::Structural)?;
    let n = h.vertex_count();
    let mut sums = tally_triples(h, true);
    let mut out = BTreeMap::new();
    for e in h.edges() {
        for o in e.iter().copied().permutations(3) {
            let o = [o[0], o[1], o[2]];
            let w = sums.remove(&key(n, o)).unwrap_or_else(Rational::zero);
            out.insert(o, w);
        }
    }
    Ok(out)
}

fn validate_ordered_edge(h: &Hypergraph, o: &[Vertex]) -> Result<()> {
    if o.len() != 3 {
        return Err(Error::CliqueSize(o.len()));
    }
    OrderedClique::new(h, o).map(|_| ())
}

/// `w_H(O)` summed directly over the ordered 5-cliques containing `O` as a
/// subsequence.
pub fn ordered_weight(h: &Hypergraph, o: &[Vertex]) -> Result<Rational> {
    check_admissible(h, Admissibility::Structural)?;
    validate_ordered_edge(h, o)?;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut total = Rational::zero();
    let needle = OrderedClique::new(h, o)?;
    for k in cliques(h, 5, o)? {
        for perm in k.iter().copied().permutations(5) {
            if !needle.is_subsequence_of(&perm) {
                continue;
            }
            let psi = gadget_value(o, [perm[0], perm[1]]);
            total += clique_weight(h, &perm[..4])? * psi * &half;
        }
    }
    Ok(total)
}

/// `w_H(O)` through the closed form
///
/// ```text
/// (1/6) ( W(x1,x2) - Σ_{y ∈ CN(x1x2x3)} ( W(x1,y,x2) - W(x1,x2,y)
///     + Σ_{z ∈ CN(x1x2x3y)} ( W(x1,y,x2,z) - W(x1,x2,y,z)
///                            + W(x1,y,z,x2) - W(y,z,x1,x2) ) ) )
/// ```
pub fn ordered_weight_expanded(h: &Hypergraph, o: &[Vertex]) -> Result<Rational> {
    check_admissible(h, Admissibility::Structural)?;
    validate_ordered_edge(h, o)?;
    let (x1, x2) = (o[0], o[1]);
    let inner = expanded_sum(h, o)?;
    Ok((clique_weight(h, &[x1, x2])? - inner) / int(6))
}

/// The `Σ_y (…)` part of the closed form, with clique weights supplied by
/// `weight`.
fn sum_over_extensions<F>(h: &Hypergraph, o: &[Vertex], weight: F) -> Result<Rational>
where
    F: Fn(&[Vertex]) -> Result<Rational>,
{
    let (x1, x2, x3) = (o[0], o[1], o[2]);
    let mut outer = Rational::zero();
    for y in h.common_coneighborhood(&[x1, x2, x3])? {
        let mut term = weight(&[x1, y, x2])? - weight(&[x1, x2, y])?;
        let mut inner = Rational::zero();
        for z in h.common_coneighborhood(&[x1, x2, x3, y])? {
            inner += weight(&[x1, y, x2, z])? - weight(&[x1, x2, y, z])?
                + weight(&[x1, y, z, x2])?
                - weight(&[y, z, x1, x2])?;
        }
        term += inner;
        outer += term;
    }
    Ok(outer)
}

fn expanded_sum(h: &Hypergraph, o: &[Vertex]) -> Result<Rational> {
    sum_over_extensions(h, o, |k| clique_weight(h, k))
}

/// `w_{H,1}(O) = 1 - 6 |CN(x1x2)| w_H(O)`.
pub fn w1(h: &Hypergraph, o: &[Vertex]) -> Result<Rational> {
    let w = ordered_weight(h, o)?;
    let c = h.cn_count(&o[..2]) as i64;
    Ok(Rational::one() - int(6 * c) * w)
}

/// `w_{H,1}(O) = |CN(x1x2)| Σ_y (…)`.
pub fn w1_expanded(h: &Hypergraph, o: &[Vertex]) -> Result<Rational> {
    check_admissible(h, Admissibility::Structural)?;
    validate_ordered_edge(h, o)?;
    let c = h.cn_count(&o[..2]) as i64;
    Ok(int(c) * expanded_sum(h, o)?)
}

/// `w_{H,1}(O)` in density form:
/// `ĈN(x1x2) (1/n) Σ_y ( Ŵ(x1,y,x2) - Ŵ(x1,x2,y) + (1/n) Σ_z (…) )`.
pub fn w1_normalized(h: &Hypergraph, o: &[Vertex]) -> Result<Rational> {
    check_admissible(h, Admissibility::Structural)?;
    validate_ordered_edge(h, o)?;
    let (x1, x2, x3) = (o[0], o[1], o[2]);
    let inv_n = Rational::new(BigInt::one(), BigInt::from(h.vertex_count()));
    let scaled = |k: &[Vertex]| scaled_clique_weight(h, k);
    let mut outer = Rational::zero();
    for y in h.common_coneighborhood(&[x1, x2, x3])? {
        let mut inner = Rational::zero();
        for z in h.common_coneighborhood(&[x1, x2, x3, y])? {
            inner += scaled(&[x1, y, x2, z])? - scaled(&[x1, x2, y, z])?
                + scaled(&[x1, y, z, x2])?
                - scaled(&[y, z, x1, x2])?;
        }
        outer += scaled(&[x1, y, x2])? - scaled(&[x1, x2, y])? + &inv_n * inner;
    }
    Ok(h.cn_density(&[x1, x2])? * inv_n * outer)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NegativeOrderedWeight {
    pub ordered_edge: [Vertex; 3],
    #[serde(with = "serde_rational")]
    pub weight: Rational,
}

/// Outcome of checking that `w_H` is non-negative on every ordered edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonnegativityReport {
    pub vertex_count: usize,
    pub essential_min_codegree: Option<usize>,
    /// Whether `δ₂^ess(H) >= (1 - x*) n`, decided exactly.
    pub meets_threshold: bool,
    #[serde(with = "serde_rational_opt")]
    pub min_ordered_weight: Option<Rational>,
    pub argmin: Option<[Vertex; 3]>,
    pub negatives: Vec<NegativeOrderedWeight>,
    pub pair_degrees: PairDegreeReport,
    /// `w_H` has all pair degrees 1 and no negative ordered weight, so it is
    /// a perfect fractional Steiner triple system.
    pub verdict: bool,
}

pub fn nonnegativity_check(h: &Hypergraph) -> Result<NonnegativityReport> {
    let ordered = ordered_weights_all(h)?;
    let w = weighting_w_h(h)?;
    let pair_degrees = verify_fractional_sts(h, &w);
    let zero = Rational::zero();
    let negatives: Vec<NegativeOrderedWeight> = ordered
        .iter()
        .filter(|(_, w)| **w < zero)
        .map(|(o, w)| NegativeOrderedWeight {
            ordered_edge: *o,
            weight: w.clone(),
        })
        .collect();
    // first minimum in lexicographic order
    let min = ordered
        .iter()
        .fold(None::<(&[Vertex; 3], &Rational)>, |best, (o, w)| match best {
            Some((_, bw)) if bw <= w => best,
            _ => Some((o, w)),
        });
    let essential = h.codegree_stats().essential_min_codegree;
    let n = h.vertex_count();
    Ok(NonnegativityReport {
        vertex_count: n,
        essential_min_codegree: essential,
        meets_threshold: essential
            .is_some_and(|d| crate::threshold::meets_codegree_threshold(d, n)),
        min_ordered_weight: min.map(|(_, w)| w.clone()),
        argmin: min.map(|(o, _)| *o),
        verdict: pair_degrees.verdict && negatives.is_empty(),
        negatives,
        pair_degrees,
    })
}
