//! Shared helpers for the integration tests: an independent LP oracle and
//! instance generators.
#![allow(dead_code)]

use fsts_core::constructions::complete_hypergraph;
use fsts_core::lp::LpProblem;
use fsts_core::weighting::{check_admissible, Admissibility};
use fsts_core::{Hypergraph, Rational, Vertex};
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Feasibility of `Ax = 1, 0 <= x <= 1` decided without touching the
/// library's solver.
///
/// Gauss-Jordan elimination first removes dependent rows and catches
/// inconsistent equalities. The reduced system is then put in standard form,
/// with a slack `s_j` for each bound `x_j + s_j = 1`, and phase one of the
/// textbook simplex minimizes the sum of artificials using Dantzig's rule,
/// switching to Bland's rule after a run of degenerate pivots.
pub fn oracle_feasible(problem: &LpProblem) -> bool {
    let n = problem.variable_count();
    let mut rows: Vec<Vec<Rational>> = problem
        .rows
        .iter()
        .map(|idx| {
            let mut r = vec![Rational::zero(); n + 1];
            for &j in idx {
                r[j] = Rational::one();
            }
            r[n] = Rational::one();
            r
        })
        .collect();

    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let piv = rows[rank][col].clone();
        for v in rows[rank].iter_mut() {
            *v /= &piv;
        }
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for k in 0..=n {
                    let delta = &f * &rows[rank][k];
                    rows[i][k] -= delta;
                }
            }
        }
        rank += 1;
    }
    if rows[rank..].iter().any(|r| !r[n].is_zero()) {
        return false;
    }
    rows.truncate(rank);
    for r in rows.iter_mut() {
        if r[n].is_negative() {
            for v in r.iter_mut() {
                *v = -v.clone();
            }
        }
    }

    // Columns: x (n), s (n), artificials (rank), then the right-hand side.
    let m = rank + n;
    let width = 2 * n + rank;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for (i, r) in rows.iter().enumerate() {
        let mut row = vec![Rational::zero(); width + 1];
        row[..n].clone_from_slice(&r[..n]);
        row[2 * n + i] = Rational::one();
        row[width] = r[n].clone();
        t.push(row);
        basis.push(2 * n + i);
    }
    for j in 0..n {
        let mut row = vec![Rational::zero(); width + 1];
        row[j] = Rational::one();
        row[n + j] = Rational::one();
        row[width] = Rational::one();
        t.push(row);
        basis.push(n + j);
    }
    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost = vec![Rational::zero(); width + 1];
    for i in 0..rank {
        for k in 0..=width {
            if k < 2 * n || k == width {
                cost[k] -= &t[i][k];
            }
        }
    }

    let mut degenerate = 0;
    loop {
        let bland = degenerate > 50;
        let entering = if bland {
            (0..width).find(|&k| cost[k].is_negative())
        } else {
            (0..width)
                .filter(|&k| cost[k].is_negative())
                .min_by(|&a, &b| cost[a].cmp(&cost[b]))
        };
        let Some(col) = entering else { break };
        let mut best: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][col].is_positive() {
                let ratio = &t[i][width] / &t[i][col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
        }
        let (row, ratio) = best.expect("phase one is bounded below by zero");
        degenerate = if ratio.is_zero() { degenerate + 1 } else { 0 };
        let piv = t[row][col].clone();
        for v in t[row].iter_mut() {
            *v /= &piv;
        }
        let pivot_row = t[row].clone();
        for (i, r) in t.iter_mut().enumerate() {
            if i != row && !r[col].is_zero() {
                let f = r[col].clone();
                for k in 0..=width {
                    r[k] -= &f * &pivot_row[k];
                }
            }
        }
        if !cost[col].is_zero() {
            let f = cost[col].clone();
            for k in 0..=width {
                cost[k] -= &f * &pivot_row[k];
            }
        }
        basis[row] = col;
    }
    cost[width].is_zero()
}

/// Deletes edges of `K_n^(3)` in seeded random order, keeping a deletion
/// only if the result stays structurally admissible, until `deletions`
/// edges are gone or no candidate remains.
pub fn random_admissible(n: usize, deletions: usize, seed: u64) -> Hypergraph {
    let mut h = complete_hypergraph(3, n).unwrap();
    let mut order: Vec<Vec<Vertex>> = h.edges().to_vec();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut removed = 0;
    for e in order {
        if removed == deletions {
            break;
        }
        let kept: Vec<Vec<Vertex>> = h.edges().iter().filter(|f| **f != e).cloned().collect();
        let candidate = Hypergraph::new(3, n, &kept).unwrap();
        if check_admissible(&candidate, Admissibility::Structural).is_ok() {
            h = candidate;
            removed += 1;
        }
    }
    h
}

/// Every ordered triple `(a, b, c)` with `{a, b, c}` an edge.
pub fn ordered_edges(h: &Hypergraph) -> Vec<[Vertex; 3]> {
    let mut out = Vec::new();
    for e in h.edges() {
        let (a, b, c) = (e[0], e[1], e[2]);
        out.extend([[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]]);
    }
    out
}
