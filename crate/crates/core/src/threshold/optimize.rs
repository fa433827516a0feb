//! Numerical maximization of the programs over their feasible regions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::check_d;
use super::programs::{w3_raw, w4_raw, w5_raw, ProgramPoint, VARIABLES};
use crate::error::Result;

pub const DEFAULT_SEED: u64 = 1;

const P5_GRID: usize = 10_000;
const P5_TOL: f64 = 1e-10;
const P4_GRID: usize = 300;
const P4_TOL: f64 = 1e-8;
const P3_STARTS: usize = 200;
const P3_LINE_GRID: usize = 32;
const P3_STEP_TOL: f64 = 1e-9;
const P3_MAX_CYCLES: usize = 500;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a maximum of `g` on `[lo, hi]`.
fn golden_max(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64, usize) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut g1, mut g2) = (g(x1), g(x2));
    let mut iterations = 0;
    while hi - lo > tol && iterations < 200 {
        if g1 < g2 {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + INV_PHI * (hi - lo);
            g2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - INV_PHI * (hi - lo);
            g1 = g(x1);
        }
        iterations += 1;
    }
    let x = 0.5 * (lo + hi);
    (x, g(x), iterations)
}

/// Grid search on `points + 1` equally spaced nodes, then golden-section
/// refinement between the neighbours of the best node. Ties go to the
/// lowest node; the refined point only replaces it if strictly better.
fn line_max(g: impl Fn(f64) -> f64, lo: f64, hi: f64, points: usize, tol: f64) -> (f64, f64, usize) {
    if hi - lo <= 0.0 {
        return (lo, g(lo), 0);
    }
    let node = |i: usize| if i == points { hi } else { lo + (hi - lo) * i as f64 / points as f64 };
    let mut best = (0, node(0), g(node(0)));
    for i in 1..=points {
        let x = node(i);
        let v = g(x);
        if v > best.2 {
            best = (i, x, v);
        }
    }
    let a = node(best.0.saturating_sub(1));
    let b = node((best.0 + 1).min(points));
    let (x, v, iterations) = golden_max(&g, a, b, tol);
    // refinement only counts when it beats the node by more than rounding
    if v > best.2 + 1e-14 * best.2.abs().max(1.0) {
        (x, v, points + 1 + iterations)
    } else {
        (best.1, best.2, points + 1 + iterations)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct P5Optimum {
    pub d: f64,
    pub f: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Maximizes `Ŵ_5` over `f ∈ [1-d, 1]`.
pub fn maximize_p5(d: f64) -> Result<P5Optimum> {
    check_d(d)?;
    let (f, value, iterations) = line_max(|f| w5_raw(d, f), 1.0 - d, 1.0, P5_GRID, P5_TOL);
    Ok(P5Optimum {
        d,
        f,
        value,
        iterations,
    })
}

/// `(f, Ŵ_5(f))` at `points + 1` equally spaced `f ∈ [1-d, 1]`.
pub fn w5_curve(d: f64, points: usize) -> Result<Vec<[f64; 2]>> {
    check_d(d)?;
    let points = points.max(1);
    Ok((0..=points)
        .map(|i| {
            let f = if i == points { 1.0 } else { 1.0 - d + d * i as f64 / points as f64 };
            [f, w5_raw(d, f)]
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct P4Optimum {
    pub d: f64,
    pub e0: f64,
    pub f: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Nelder–Mead maximization on a box, with every trial point clamped into
/// the box.
fn nelder_mead_box(
    g: impl Fn([f64; 2]) -> f64,
    start: [f64; 2],
    step: [f64; 2],
    lo: f64,
    hi: f64,
    tol: f64,
) -> ([f64; 2], f64, usize) {
    let clamp = |x: [f64; 2]| [x[0].clamp(lo, hi), x[1].clamp(lo, hi)];
    let comb = |a: [f64; 2], b: [f64; 2], t: f64| clamp([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
    let mut simplex: Vec<([f64; 2], f64)> = [
        start,
        [start[0] + step[0], start[1]],
        [start[0], start[1] + step[1]],
    ]
    .into_iter()
    .map(|x| {
        let x = clamp(x);
        (x, g(x))
    })
    .collect();
    let mut iterations = 0;
    while iterations < 10_000 {
        simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
        let size = simplex[1..]
            .iter()
            .map(|(x, _)| (x[0] - simplex[0].0[0]).abs().max((x[1] - simplex[0].0[1]).abs()))
            .fold(0.0, f64::max);
        if size < tol {
            break;
        }
        iterations += 1;
        let centroid = [
            0.5 * (simplex[0].0[0] + simplex[1].0[0]),
            0.5 * (simplex[0].0[1] + simplex[1].0[1]),
        ];
        let worst = simplex[2];
        let reflected = comb(centroid, worst.0, -1.0);
        let fr = g(reflected);
        if fr > simplex[0].1 {
            let expanded = comb(centroid, worst.0, -2.0);
            let fe = g(expanded);
            simplex[2] = if fe > fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr > simplex[1].1 {
            simplex[2] = (reflected, fr);
        } else {
            let contracted = comb(centroid, worst.0, 0.5);
            let fc = g(contracted);
            if fc > worst.1 {
                simplex[2] = (contracted, fc);
            } else {
                let best = simplex[0].0;
                for v in simplex.iter_mut().skip(1) {
                    let x = comb(best, v.0, 0.5);
                    *v = (x, g(x));
                }
            }
        }
    }
    simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
    (simplex[0].0, simplex[0].1, iterations)
}

/// Maximizes `Ŵ_4` over `(e0, f) ∈ [1-d, 1]²`.
pub fn maximize_p4(d: f64) -> Result<P4Optimum> {
    check_d(d)?;
    let (lo, hi) = (1.0 - d, 1.0);
    let g = |x: [f64; 2]| w4_raw(d, x[0], x[1]);
    let node = |i: usize| if i == P4_GRID { hi } else { lo + d * i as f64 / P4_GRID as f64 };
    let mut best = ([hi, hi], g([hi, hi]));
    let mut best_idx = [P4_GRID, P4_GRID];
    if d > 0.0 {
        for i in 0..=P4_GRID {
            for j in 0..=P4_GRID {
                let x = [node(i), node(j)];
                let v = g(x);
                if v > best.1 {
                    best = (x, v);
                    best_idx = [i, j];
                }
            }
        }
    }
    let mut iterations = (P4_GRID + 1) * (P4_GRID + 1);
    if d > 0.0 {
        let spacing = d / P4_GRID as f64;
        let step = best_idx.map(|i| if i == P4_GRID { -spacing } else { spacing });
        let (x, v, it) = nelder_mead_box(g, best.0, step, lo, hi, P4_TOL);
        iterations += it;
        if v > best.1 {
            best = (x, v);
        }
    }
    Ok(P4Optimum {
        d,
        e0: best.0[0],
        f: best.0[1],
        value: best.1,
        iterations,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct P3Optimum {
    pub d: f64,
    pub point: ProgramPoint,
    pub value: f64,
    /// Coordinate-ascent cycles summed over all starts.
    pub iterations: usize,
    pub starts: usize,
    pub best_start: usize,
}

/// Maps unit coordinates onto the (P3) region: each variable sits at the
/// same relative position of the interval induced by the variables before
/// it. The map is onto, so ascent over the unit cube covers the region, and
/// a variable resting on a bound stays there when its parents move.
fn from_unit(d: f64, t: &[f64; 8]) -> ProgramPoint {
    let mut pt = ProgramPoint {
        d,
        e0: 1.0,
        e: 1.0,
        f: 1.0,
        q0: 1.0,
        q: 1.0,
        p: 1.0,
        r0: 1.0,
        r: 1.0,
    };
    for (i, &ti) in t.iter().enumerate() {
        let (lo, hi) = pt.interval(i);
        pt.set(i, if ti >= 1.0 { hi } else { lo + ti * (hi - lo) });
    }
    pt
}

fn coordinate_ascent(d: f64, mut t: [f64; 8]) -> (ProgramPoint, f64, usize) {
    let mut value = w3_raw(&from_unit(d, &t));
    let mut cycles = 0;
    while cycles < P3_MAX_CYCLES {
        cycles += 1;
        let mut moved: f64 = 0.0;
        for i in 0..VARIABLES.len() {
            let trial = |x: f64| {
                let mut u = t;
                u[i] = x;
                w3_raw(&from_unit(d, &u))
            };
            let (x, v, _) = line_max(trial, 0.0, 1.0, P3_LINE_GRID, 1e-12);
            if v > value {
                moved = moved.max((x - t[i]).abs());
                t[i] = x;
                value = v;
            }
        }
        if moved < P3_STEP_TOL {
            break;
        }
    }
    (from_unit(d, &t), value, cycles)
}

/// Multistart projected coordinate ascent for `Ŵ_3` over the (P3) region.
pub fn maximize_p3(d: f64, seed: u64) -> Result<P3Optimum> {
    check_d(d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // uniform draws of e0, e, f and then of each dependent variable in its
    // induced interval
    let starts: Vec<[f64; 8]> = (0..P3_STARTS).map(|_| rng.gen::<[f64; 8]>()).collect();
    let runs: Vec<(ProgramPoint, f64, usize)> = starts
        .into_par_iter()
        .map(|t| coordinate_ascent(d, t))
        .collect();
    let mut best_start = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.1 > runs[best_start].1 {
            best_start = i;
        }
    }
    let (point, value, _) = runs[best_start];
    Ok(P3Optimum {
        d,
        point,
        value,
        iterations: runs.iter().map(|r| r.2).sum(),
        starts: P3_STARTS,
        best_start,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainReport {
    pub d: f64,
    pub tol: f64,
    pub p3: f64,
    pub p4: f64,
    pub p5: f64,
    pub p4_agrees: bool,
    pub p3_agrees: bool,
    pub verdict: bool,
}

/// Checks numerically that the three programs have the same optimum.
pub fn verify_chain(d: f64, tol: f64, seed: u64) -> Result<ChainReport> {
    let p5 = maximize_p5(d)?.value;
    let p4 = maximize_p4(d)?.value;
    let p3 = maximize_p3(d, seed)?.value;
    let p4_agrees = (p4 - p5).abs() <= tol;
    let p3_agrees = (p3 - p5).abs() <= tol;
    Ok(ChainReport {
        d,
        tol,
        p3,
        p4,
        p5,
        p4_agrees,
        p3_agrees,
        verdict: p4_agrees && p3_agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{w5_at_one, x_star};
    use super::*;

    #[test]
    fn p5_examples() {
        let r = maximize_p5(0.0).unwrap();
        assert_eq!((r.f, r.value), (1.0, 0.0));
        let r = maximize_p5(x_star()).unwrap();
        assert!((r.f - 1.0).abs() < 1e-9 && (r.value - 1.0).abs() < 1e-8);
        let r = maximize_p5(0.15).unwrap();
        assert!(r.value > 1.0);
        assert!(r.value > w5_at_one(0.15).unwrap());
        assert!((r.value - 1.1400257409496504).abs() < 1e-9);
        assert!((r.f - 0.969093325).abs() < 1e-6);
    }

    #[test]
    fn p5_values_from_dense_reference_grid() {
        for (d, v) in [
            (0.05, 0.19005847953216354),
            (0.1, 0.5092592592592595),
            (0.1421, 0.9989500099861811),
            (0.16, 1.3799061644889798),
        ] {
            assert!((maximize_p5(d).unwrap().value - v).abs() < 1e-9, "d = {d}");
        }
    }

    #[test]
    fn p4_agrees_with_p5() {
        assert_eq!(maximize_p4(0.0).unwrap().value, 0.0);
        assert!((maximize_p4(x_star()).unwrap().value - 1.0).abs() < 1e-6);
        for d in [0.03, 0.1, 0.13, 0.15, 0.16] {
            let a = maximize_p4(d).unwrap().value;
            let b = maximize_p5(d).unwrap().value;
            assert!((a - b).abs() < 1e-6, "d = {d}: {a} vs {b}");
        }
    }

    #[test]
    fn p3_agrees_with_p5() {
        let r = maximize_p3(0.0, DEFAULT_SEED).unwrap();
        assert!(r.value.abs() < 1e-8);
        for d in [0.05, 0.1, 0.1421, 0.15] {
            let r = maximize_p3(d, DEFAULT_SEED).unwrap();
            let p5 = maximize_p5(d).unwrap().value;
            assert!(r.point.is_feasible());
            assert!((r.value - p5).abs() < 1e-4, "d = {d}: {} vs {p5}", r.value);
        }
        assert!(maximize_p3(0.1421, DEFAULT_SEED).unwrap().value <= 1.0 + 1e-6);
    }

    #[test]
    fn p3_is_deterministic_for_a_seed() {
        assert_eq!(maximize_p3(0.12, 9).unwrap(), maximize_p3(0.12, 9).unwrap());
    }

    #[test]
    fn chain_examples() {
        let r = verify_chain(0.0, 1e-6, DEFAULT_SEED).unwrap();
        assert!(r.verdict && r.p5 == 0.0);
        let r = verify_chain(x_star(), 1e-4, DEFAULT_SEED).unwrap();
        assert!(r.verdict);
        assert!((r.p5 - 1.0).abs() < 1e-4);
        assert!(verify_chain(0.05, 1e-4, DEFAULT_SEED).unwrap().verdict);
    }
}
