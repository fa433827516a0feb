//! Edge weightings of 3-graphs and the clique-weighted gadget construction.

mod gadget;
mod ordered;

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::rational::{serde_rational, serde_rational_opt, serde_rational_vec, Rational};

pub use gadget::{edge_gadget, gadget_degree};
pub use ordered::{
    clique_weight, nonnegativity_check, ordered_weight, ordered_weight_expanded,
    ordered_weights_all, scaled_clique_weight, w1, w1_expanded, w1_normalized,
    weighting_w_h, weighting_w_h_f64, NegativeOrderedWeight, NonnegativityReport,
};

/// Exact weights on edges of a host hypergraph; absent edges weigh 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Weighting {
    weights: BTreeMap<Vec<Vertex>, Rational>,
}

impl Weighting {
    /// Builds a weighting, rejecting keys that are not edges of `host`.
    pub fn new<I>(host: &Hypergraph, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<Vertex>, Rational)>,
    {
        let w = Self::from_entries(entries);
        w.check_host(host)?;
        Ok(w)
    }

    pub fn constant(host: &Hypergraph, value: Rational) -> Self {
        Self::from_map_unchecked(
            host.edges()
                .iter()
                .map(|e| (e.clone(), value.clone()))
                .collect(),
        )
    }

    fn from_entries<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = (Vec<Vertex>, Rational)>,
    {
        let weights = entries
            .into_iter()
            .map(|(mut e, w)| {
                e.sort_unstable();
                (e, w)
            })
            .collect();
        Self { weights }
    }

    pub(crate) fn from_map_unchecked(weights: BTreeMap<Vec<Vertex>, Rational>) -> Self {
        Self { weights }
    }

    /// Errors on the first key that is not an edge of `host`.
    pub fn check_host(&self, host: &Hypergraph) -> Result<()> {
        match self.weights.keys().find(|e| !host.contains_edge(e)) {
            Some(e) => Err(Error::EdgeNotInHost(e.clone())),
            None => Ok(()),
        }
    }

    pub fn weight(&self, edge: &[Vertex]) -> Rational {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.weights.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Vertex>, &Rational)> {
        self.weights.iter()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.weights.values().fold(Rational::zero(), |acc, w| acc + w)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("weightings serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Serialize, Deserialize)]
struct WeightingJson {
    edges: Vec<Vec<Vertex>>,
    #[serde(with = "serde_rational_vec")]
    weights: Vec<Rational>,
}

impl Serialize for Weighting {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (edges, weights) = self
            .weights
            .iter()
            .map(|(e, w)| (e.clone(), w.clone()))
            .unzip();
        WeightingJson { edges, weights }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weighting {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = WeightingJson::deserialize(d)?;
        if raw.edges.len() != raw.weights.len() {
            return Err(serde::de::Error::custom(format!(
                "{} edges but {} weights",
                raw.edges.len(),
                raw.weights.len()
            )));
        }
        Ok(Self::from_entries(raw.edges.into_iter().zip(raw.weights)))
    }
}

/// Which hypothesis a 3-graph must satisfy before `w_H` is built.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Admissibility {
    /// Every edge lies in a 4-clique and every 4-clique in a 5-clique, which
    /// is exactly what the degree-one identity uses.
    #[default]
    Structural,
    /// The codegree hypothesis `δ₂^ess(H) > 5n/6`, which implies the
    /// structural one.
    StrictThreshold,
}

/// Checks the hypotheses under which every shadow pair of `h` gets weighted
/// degree exactly 1 from `w_H`. Requires a 3-graph on at least 5 vertices.
pub fn check_admissible(h: &Hypergraph, mode: Admissibility) -> Result<()> {
    if h.uniformity() != 3 {
        return Err(Error::Uniformity {
            op: "the gadget weighting",
            expected: 3,
            found: h.uniformity(),
        });
    }
    let n = h.vertex_count();
    if n < 5 {
        return Err(Error::TooFewVertices { n, min: 5 });
    }
    if mode == Admissibility::StrictThreshold {
        let (pair, codegree) = h.min_codegree_pair().ok_or(Error::EmptyShadow)?;
        if 6 * codegree <= 5 * n {
            return Err(Error::BelowThreshold {
                pair,
                codegree,
                bound_num: 5 * n,
                bound_den: 6,
            });
        }
    }
    for e in h.edges() {
        if h.cn_count(e) == 0 {
            return Err(Error::NoExtension {
                pair: [e[0], e[1]],
                clique: e.clone(),
            });
        }
        for v in h.common_coneighborhood(e)? {
            if v < e[2] {
                continue;
            }
            let four = [e[0], e[1], e[2], v];
            if h.cn_count(&four) == 0 {
                return Err(Error::NoExtension {
                    pair: [e[0], e[1]],
                    clique: four.to_vec(),
                });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetDegree {
    pub set: Vec<Vertex>,
    #[serde(with = "serde_rational")]
    pub degree: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeWeight {
    pub edge: Vec<Vertex>,
    #[serde(with = "serde_rational")]
    pub weight: Rational,
}

/// Weighted degrees of all shadow members under a weighting, and whether the
/// weighting is a perfect fractional Steiner system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairDegreeReport {
    pub degrees: Vec<SetDegree>,
    #[serde(with = "serde_rational_opt")]
    pub min_weight: Option<Rational>,
    #[serde(with = "serde_rational_opt")]
    pub max_weight: Option<Rational>,
    pub all_degrees_one: bool,
    pub weights_in_unit_interval: bool,
    pub violating_sets: Vec<SetDegree>,
    pub violating_edges: Vec<EdgeWeight>,
    /// Weighted keys that are not edges of the host.
    pub foreign_edges: Vec<Vec<Vertex>>,
    pub verdict: bool,
}

/// Sums `ψ` over the edges through each `(r-1)`-set of the shadow.
pub fn verify_fractional_sts(h: &Hypergraph, psi: &Weighting) -> PairDegreeReport {
    let degrees: Vec<SetDegree> = h
        .incidence()
        .iter()
        .map(|(set, nb)| {
            let degree = nb
                .iter()
                .map(|&v| {
                    let mut e = set.clone();
                    e.push(v);
                    psi.weight(&e)
                })
                .fold(Rational::zero(), |acc, w| acc + w);
            SetDegree {
                set: set.clone(),
                degree,
            }
        })
        .collect();
    let weights: Vec<EdgeWeight> = h
        .edges()
        .iter()
        .map(|e| EdgeWeight {
            edge: e.clone(),
            weight: psi.weight(e),
        })
        .collect();
    let one = Rational::one();
    let zero = Rational::zero();
    let violating_sets: Vec<SetDegree> = degrees
        .iter()
        .filter(|d| d.degree != one)
        .cloned()
        .collect();
    let violating_edges: Vec<EdgeWeight> = weights
        .iter()
        .filter(|w| w.weight < zero || w.weight > one)
        .cloned()
        .collect();
    let foreign_edges: Vec<Vec<Vertex>> = psi
        .iter()
        .map(|(e, _)| e)
        .filter(|e| !h.contains_edge(e))
        .cloned()
        .collect();
    let (min_weight, max_weight) = match weights.iter().map(|w| &w.weight).minmax() {
        itertools::MinMaxResult::NoElements => (None, None),
        itertools::MinMaxResult::OneElement(w) => (Some(w.clone()), Some(w.clone())),
        itertools::MinMaxResult::MinMax(a, b) => (Some(a.clone()), Some(b.clone())),
    };
    let all_degrees_one = violating_sets.is_empty();
    let weights_in_unit_interval = violating_edges.is_empty();
    PairDegreeReport {
        verdict: all_degrees_one && weights_in_unit_interval && foreign_edges.is_empty(),
        degrees,
        min_weight,
        max_weight,
        all_degrees_one,
        weights_in_unit_interval,
        violating_sets,
        violating_edges,
        foreign_edges,
    }
}
