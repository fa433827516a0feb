//! The cubic threshold polynomial and the chain of optimization programs
//! whose common optimum bounds the ordered weight `w_{H,1}`.
//!
//! `d` is the codegree defect: `δ₂^ess(H) >= (1 - d) n`. Every program is
//! parametrized by co-neighbourhood densities that live in `[1 - kd, 1]`.

mod optimize;
mod programs;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{int, rat, Rational};

pub use optimize::{
    maximize_p3, maximize_p4, maximize_p5, verify_chain, w5_curve, ChainReport, P3Optimum,
    P4Optimum, P5Optimum, DEFAULT_SEED,
};
pub use programs::{eta, optimal_point_p3, w3_eval, w4_eval, w5_at_one, w5_eval, ProgramPoint};

/// Largest admissible defect; `d = 1/6` makes denominators such as
/// `1 - 4d - 2d` degenerate.
pub const D_MAX: f64 = 1.0 / 6.0 - 1e-12;

/// Slack allowed when checking box constraints in double precision.
pub const FEASIBILITY_TOL: f64 = 1e-12;

pub(crate) fn check_d(d: f64) -> Result<()> {
    if !(0.0..=D_MAX).contains(&d) {
        return Err(Error::Domain {
            name: "d",
            value: d,
            lo: 0.0,
            hi: D_MAX,
        });
    }
    Ok(())
}

/// `p(x) = 8x³ - 22x² + 10x - 1`.
pub fn poly_p(x: f64) -> f64 {
    ((8.0 * x - 22.0) * x + 10.0) * x - 1.0
}

pub fn poly_p_exact(x: &Rational) -> Rational {
    ((int(8) * x - int(22)) * x + int(10)) * x - int(1)
}

/// Whether `delta >= (1 - x*) n`, decided exactly.
///
/// With `t = 1 - delta/n` this is `t <= x*`. On `[0, 1/5]` the polynomial
/// `p` is increasing with its only root at `x*`, and `p(1/5) > 0`.
pub fn meets_codegree_threshold(delta: usize, n: usize) -> bool {
    if n == 0 {
        return false;
    }
    let t = int(1) - Rational::new(delta.into(), n.into());
    if !t.is_positive() {
        return true;
    }
    if t > rat(1, 5) {
        return false;
    }
    !poly_p_exact(&t).is_positive()
}

/// `⌈(1 - x*) n⌉`, the least codegree meeting the threshold.
pub fn threshold_codegree(n: usize) -> usize {
    (0..=n)
        .find(|&delta| meets_codegree_threshold(delta, n))
        .unwrap_or(n)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub x_star: f64,
    /// `1 - x*`.
    pub threshold: f64,
    /// `|p(x*)|`.
    pub residual: f64,
    pub bracket: [f64; 2],
    pub width: f64,
    pub iterations: usize,
}

/// Bisects `p` on `[0, 1/6]`, where it rises from `-1` to `5/54`, until the
/// bracket is at most `tol` wide.
pub fn root_xstar(tol: f64) -> Result<ThresholdReport> {
    if !(tol > 0.0) {
        return Err(Error::Domain {
            name: "tol",
            value: tol,
            lo: f64::MIN_POSITIVE,
            hi: f64::INFINITY,
        });
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64 / 6.0);
    let mut iterations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if poly_p(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let x_star = 0.5 * (lo + hi);
    Ok(ThresholdReport {
        x_star,
        threshold: 1.0 - x_star,
        residual: poly_p(x_star).abs(),
        bracket: [lo, hi],
        width: hi - lo,
        iterations,
    })
}

/// `x*` to double precision.
pub fn x_star() -> f64 {
    root_xstar(1e-15).expect("positive tolerance").x_star
}
