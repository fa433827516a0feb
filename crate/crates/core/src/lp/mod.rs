//! Exact feasibility of the fractional Steiner system LP.
//!
//! One variable per edge, boxed in `[0, 1]`, and one equality per
//! constrained `(r-1)`-set: the variables of the edges through it sum to 1.
//! Infeasibility comes with a Farkas certificate `y` over the rows: writing
//! `μ = max(0, yᵀA)` and `λ = max(0, -yᵀA)`, every feasible `x` would give
//! `yᵀb = yᵀAx = (μ - λ)ᵀx <= μᵀu`, so `yᵀb > μᵀu` is a contradiction.

mod simplex;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::rational::{clear_denominators, rat, serde_rational, serde_rational_vec, Rational};
use crate::weighting::Weighting;

/// Which `(r-1)`-sets get a degree-one constraint.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintMode {
    /// Only sets of positive degree.
    #[default]
    ShadowOnly,
    /// Every `(r-1)`-subset of the vertex set.
    AllTuples,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LpProblem {
    pub uniformity: usize,
    pub vertex_count: usize,
    pub mode: ConstraintMode,
    /// Variable `j` is the weight of edge `variables[j]`.
    pub variables: Vec<Vec<Vertex>>,
    /// Row `i` asks the edges through `constraints[i]` to weigh 1 in total.
    pub constraints: Vec<Vec<Vertex>>,
    /// Variable indices appearing in each row.
    pub rows: Vec<Vec<usize>>,
}

impl LpProblem {
    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    pub fn constraint_count(&self) -> usize {
        self.constraints.len()
    }

    /// `yᵀA` as a vector over the variables.
    pub fn combine_rows(&self, y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.variables.len()];
        for (row, yi) in self.rows.iter().zip(y) {
            if yi.is_zero() {
                continue;
            }
            for &j in row {
                out[j] += yi;
            }
        }
        out
    }
}

pub fn build_fsts_lp(h: &Hypergraph, mode: ConstraintMode) -> LpProblem {
    let variables = h.edges().to_vec();
    let constraints: Vec<Vec<Vertex>> = match mode {
        ConstraintMode::ShadowOnly => h.shadow(),
        ConstraintMode::AllTuples => h.vertices().combinations(h.uniformity() - 1).collect(),
    };
    let rows = constraints
        .iter()
        .map(|set| {
            h.neighborhood(set)
                .iter()
                .map(|&v| {
                    let mut e = set.clone();
                    e.push(v);
                    e.sort_unstable();
                    variables
                        .binary_search(&e)
                        .expect("incidence lists only edges")
                })
                .sorted_unstable()
                .collect()
        })
        .collect();
    LpProblem {
        uniformity: h.uniformity(),
        vertex_count: h.vertex_count(),
        mode,
        variables,
        constraints,
        rows,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LpStatus {
    Feasible,
    Infeasible,
}

/// Farkas multipliers proving that no weighting in the box meets every row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// `y`, one multiplier per row.
    #[serde(with = "serde_rational_vec")]
    pub row_multipliers: Vec<Rational>,
    /// `μ = max(0, yᵀA)`, multipliers of the upper bounds `x <= 1`.
    #[serde(with = "serde_rational_vec")]
    pub upper_multipliers: Vec<Rational>,
    /// `λ = max(0, -yᵀA)`, multipliers of the lower bounds `x >= 0`.
    #[serde(with = "serde_rational_vec")]
    pub lower_multipliers: Vec<Rational>,
    /// `yᵀb - μᵀu`, positive for a valid certificate.
    #[serde(with = "serde_rational")]
    pub gap: Rational,
}

impl Certificate {
    /// Completes row multipliers to a certificate, after scaling them by a
    /// positive constant to coprime integers.
    pub fn from_rows(problem: &LpProblem, y: &[Rational]) -> Self {
        let y = clear_denominators(y);
        let combined = problem.combine_rows(&y);
        let zero = Rational::zero();
        let upper_multipliers: Vec<Rational> = combined
            .iter()
            .map(|v| if v.is_positive() { v.clone() } else { zero.clone() })
            .collect();
        let lower_multipliers = combined
            .iter()
            .map(|v| if v.is_negative() { -v.clone() } else { zero.clone() })
            .collect();
        let gap = y.iter().fold(zero.clone(), |acc, v| acc + v)
            - upper_multipliers.iter().fold(zero, |acc, v| acc + v);
        Self {
            row_multipliers: y,
            upper_multipliers,
            lower_multipliers,
            gap,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub witness: Option<Weighting>,
    pub certificate: Option<Certificate>,
    pub pivots: usize,
}

pub fn solve_feasibility(problem: &LpProblem) -> LpOutcome {
    if let Some(i) = problem.rows.iter().position(Vec::is_empty) {
        let mut y = vec![Rational::zero(); problem.constraint_count()];
        y[i] = Rational::one();
        return LpOutcome {
            status: LpStatus::Infeasible,
            witness: None,
            certificate: Some(Certificate::from_rows(problem, &y)),
            pivots: 0,
        };
    }
    let m = problem.variable_count();
    let b = vec![Rational::one(); problem.constraint_count()];
    let u = vec![Rational::one(); m];
    let result = simplex::phase_one(&problem.rows, m, &b, &u);
    if result.objective.is_zero() {
        let weights = problem
            .variables
            .iter()
            .cloned()
            .zip(result.x)
            .collect();
        LpOutcome {
            status: LpStatus::Feasible,
            witness: Some(Weighting::from_map_unchecked(weights)),
            certificate: None,
            pivots: result.pivots,
        }
    } else {
        LpOutcome {
            status: LpStatus::Infeasible,
            witness: None,
            certificate: Some(Certificate::from_rows(problem, &result.duals)),
            pivots: result.pivots,
        }
    }
}

/// Re-checks an outcome in exact arithmetic: a witness must lie in the box
/// and satisfy every row, a certificate must satisfy `yᵀA - μ + λ = 0`,
/// `μ, λ >= 0` and `yᵀb - μᵀu > 0`.
pub fn verify_certificate(problem: &LpProblem, outcome: &LpOutcome) -> Result<bool> {
    match (outcome.status, &outcome.witness, &outcome.certificate) {
        (LpStatus::Feasible, Some(w), _) => {
            if w.len() != problem.variable_count()
                || w.iter().map(|(e, _)| e).ne(problem.variables.iter())
            {
                return Err(Error::Mismatch("witness edges differ from the variables".into()));
            }
            let x: Vec<&Rational> = w.iter().map(|(_, v)| v).collect();
            let zero = Rational::zero();
            let one = Rational::one();
            let in_box = x.iter().all(|v| **v >= zero && **v <= one);
            let rows_ok = problem
                .rows
                .iter()
                .all(|row| row.iter().fold(zero.clone(), |acc, &j| acc + x[j]) == one);
            Ok(in_box && rows_ok)
        }
        (LpStatus::Infeasible, _, Some(c)) => {
            if c.row_multipliers.len() != problem.constraint_count()
                || c.upper_multipliers.len() != problem.variable_count()
                || c.lower_multipliers.len() != problem.variable_count()
            {
                return Err(Error::Mismatch("certificate dimensions differ from the problem".into()));
            }
            let zero = Rational::zero();
            let nonnegative = c
                .upper_multipliers
                .iter()
                .chain(&c.lower_multipliers)
                .all(|v| *v >= zero);
            let combined = problem.combine_rows(&c.row_multipliers);
            let balanced = combined
                .iter()
                .zip(c.upper_multipliers.iter().zip(&c.lower_multipliers))
                .all(|(a, (mu, lambda))| a - mu + lambda == zero);
            let gap = c.row_multipliers.iter().fold(zero.clone(), |acc, v| acc + v)
                - c.upper_multipliers.iter().fold(zero.clone(), |acc, v| acc + v);
            Ok(nonnegative && balanced && gap.is_positive())
        }
        _ => Err(Error::Mismatch("outcome lacks its witness or certificate".into())),
    }
}

/// The counting bound for tripartite barriers: any fractional STS has total
/// mass `|∂H|/3`, while an edge covering a within-part pair can put at most
/// as much mass as the number of such pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceBarrierBound {
    /// `|∂H| / 3`, the total weight any perfect fractional STS must have.
    #[serde(with = "serde_rational")]
    pub requirement: Rational,
    /// Number of within-part shadow pairs, an upper bound on the total weight.
    #[serde(with = "serde_rational")]
    pub capacity: Rational,
    /// `capacity < requirement`.
    pub infeasible: bool,
}

fn part_labels(h: &Hypergraph, parts: &[Vec<Vertex>]) -> Result<Vec<usize>> {
    let n = h.vertex_count();
    let mut label = vec![usize::MAX; n];
    for (i, part) in parts.iter().enumerate() {
        for &v in part {
            if v as usize >= n {
                return Err(Error::InvalidPartition(format!("vertex {v} is out of range")));
            }
            if label[v as usize] != usize::MAX {
                return Err(Error::InvalidPartition(format!("vertex {v} is in two parts")));
            }
            label[v as usize] = i;
        }
    }
    if let Some(v) = label.iter().position(|&l| l == usize::MAX) {
        return Err(Error::InvalidPartition(format!("vertex {v} is in no part")));
    }
    Ok(label)
}

pub fn space_barrier_bound(h: &Hypergraph, parts: &[Vec<Vertex>]) -> Result<SpaceBarrierBound> {
    if h.uniformity() != 3 {
        return Err(Error::Uniformity {
            op: "the space barrier bound",
            expected: 3,
            found: h.uniformity(),
        });
    }
    let label = part_labels(h, parts)?;
    let within = |a: Vertex, b: Vertex| label[a as usize] == label[b as usize];
    if let Some(e) = h
        .edges()
        .iter()
        .find(|e| !e.iter().tuple_combinations().any(|(&a, &b)| within(a, b)))
    {
        return Err(Error::BoundInapplicable(e.clone()));
    }
    let shadow = h.shadow();
    let capacity = shadow.iter().filter(|p| within(p[0], p[1])).count();
    let requirement = rat(shadow.len() as i64, 3);
    let capacity = Rational::from_integer(capacity.into());
    Ok(SpaceBarrierBound {
        infeasible: capacity < requirement,
        requirement,
        capacity,
    })
}

/// The certificate behind [`space_barrier_bound`]: `y = 1/3` on every
/// shadow pair minus 1 on within-part pairs, for a shadow-only problem.
pub fn space_barrier_certificate(
    h: &Hypergraph,
    problem: &LpProblem,
    parts: &[Vec<Vertex>],
) -> Result<Certificate> {
    space_barrier_bound(h, parts)?;
    if problem.mode != ConstraintMode::ShadowOnly || problem.variables != h.edges() {
        return Err(Error::Mismatch("expected the shadow-only problem of this hypergraph".into()));
    }
    let label = part_labels(h, parts)?;
    let y: Vec<Rational> = problem
        .constraints
        .iter()
        .map(|p| {
            if label[p[0] as usize] == label[p[1] as usize] {
                rat(-2, 3)
            } else {
                rat(1, 3)
            }
        })
        .collect();
    Ok(Certificate::from_rows(problem, &y))
}
