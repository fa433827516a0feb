//! Phase-1 bounded-variable simplex over exact rationals.
//!
//! Solves `min Σ a_i` subject to `A x + a = b`, `0 <= x <= u`, `a >= 0`, with
//! `b >= 0` and the artificials `a` as the starting basis. Entering and
//! leaving variables are chosen by smallest index (Bland), which rules out
//! cycling.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Basic,
    Lower,
    Upper,
}

pub(crate) struct PhaseOne {
    /// Values of the structural variables at the end of phase 1.
    pub x: Vec<Rational>,
    /// Optimal phase-1 objective; zero iff the system is feasible.
    pub objective: Rational,
    /// Simplex multipliers `c_B B^{-1}` of the final basis.
    pub duals: Vec<Rational>,
    pub pivots: usize,
}

/// `rows[i]` lists the columns with a coefficient 1 in row `i`.
pub(crate) fn phase_one(rows: &[Vec<usize>], columns: usize, b: &[Rational], upper: &[Rational]) -> PhaseOne {
    let k = rows.len();
    let m = columns;
    let total = m + k;
    let zero = Rational::zero();
    let one = Rational::one();

    let mut t = vec![vec![zero.clone(); total]; k];
    for (i, row) in rows.iter().enumerate() {
        for &j in row {
            t[i][j] += &one;
        }
        t[i][m + i] = one.clone();
    }
    let mut beta: Vec<Rational> = b.to_vec();
    let mut basis: Vec<usize> = (m..total).collect();
    let mut status = vec![Status::Lower; total];
    for s in &mut status[m..] {
        *s = Status::Basic;
    }
    let bound = |j: usize| if j < m { Some(&upper[j]) } else { None };

    // reduced costs c_j - c_B^T B^{-1} A_j with c = (0, 1)
    let mut d = vec![zero.clone(); total];
    for j in 0..m {
        d[j] = -t.iter().map(|r| &r[j]).fold(zero.clone(), |acc, v| acc + v);
    }
    let mut objective = b.iter().fold(zero.clone(), |acc, v| acc + v);
    let mut pivots = 0;

    loop {
        let entering = (0..total).find(|&j| match status[j] {
            Status::Lower => d[j].is_negative(),
            Status::Upper => d[j].is_positive(),
            Status::Basic => false,
        });
        let Some(q) = entering else { break };
        let increasing = status[q] == Status::Lower;

        // ratio test; candidates are (step, variable index, row)
        let mut best: Option<(Rational, usize, Option<usize>)> = None;
        let mut consider = |step: Rational, index: usize, row: Option<usize>| {
            let better = match &best {
                None => true,
                Some((s, i, _)) => step < *s || (step == *s && index < *i),
            };
            if better {
                best = Some((step, index, row));
            }
        };
        for i in 0..k {
            let alpha = if increasing { t[i][q].clone() } else { -t[i][q].clone() };
            if alpha.is_positive() {
                consider(&beta[i] / &alpha, basis[i], Some(i));
            } else if alpha.is_negative() {
                if let Some(u) = bound(basis[i]) {
                    consider((u - &beta[i]) / -alpha, basis[i], Some(i));
                }
            }
        }
        if let Some(u) = bound(q) {
            consider(u.clone(), q, None);
        }
        let (step, _, row) = best.expect("phase-1 objective is bounded below");

        let signed_step = if increasing { step.clone() } else { -step.clone() };
        if !step.is_zero() {
            for i in 0..k {
                if !t[i][q].is_zero() {
                    beta[i] -= &t[i][q] * &signed_step;
                }
            }
            objective += &d[q] * &signed_step;
        }

        match row {
            None => {
                status[q] = if increasing { Status::Upper } else { Status::Lower };
            }
            Some(r) => {
                pivots += 1;
                let leaving = basis[r];
                let alpha = if increasing { t[r][q].clone() } else { -t[r][q].clone() };
                status[leaving] = if alpha.is_positive() { Status::Lower } else { Status::Upper };
                let start = if increasing {
                    zero.clone()
                } else {
                    bound(q).expect("only bounded variables sit at an upper bound").clone()
                };
                beta[r] = start + signed_step;
                status[q] = Status::Basic;
                basis[r] = q;

                let pivot = t[r][q].clone();
                for v in t[r].iter_mut() {
                    if !v.is_zero() {
                        *v /= &pivot;
                    }
                }
                let pivot_row = std::mem::take(&mut t[r]);
                let support: Vec<usize> = (0..total).filter(|&j| !pivot_row[j].is_zero()).collect();
                for (i, other) in t.iter_mut().enumerate() {
                    if i == r || other[q].is_zero() {
                        continue;
                    }
                    let factor = other[q].clone();
                    for &j in &support {
                        other[j] -= &factor * &pivot_row[j];
                    }
                }
                if !d[q].is_zero() {
                    let factor = d[q].clone();
                    for &j in &support {
                        d[j] -= &factor * &pivot_row[j];
                    }
                }
                t[r] = pivot_row;
            }
        }
    }

    let mut x = vec![zero.clone(); m];
    for j in 0..m {
        if status[j] == Status::Upper {
            x[j] = upper[j].clone();
        }
    }
    for (i, &j) in basis.iter().enumerate() {
        if j < m {
            x[j] = beta[i].clone();
        }
    }
    // d_{a_i} = 1 - y_i
    let duals = (0..k).map(|i| &one - &d[m + i]).collect();
    PhaseOne {
        x,
        objective,
        duals,
        pivots,
    }
}
