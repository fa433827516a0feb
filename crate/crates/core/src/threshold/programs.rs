//! Objectives of the programs (P3), (P4), (P5) and their feasible regions.

use serde::Serialize;

use super::{check_d, FEASIBILITY_TOL};
use crate::error::{Error, Result};

/// A point of (P3): densities `e0, e, f` of the first pairs, `q0, q, p` of
/// the triples they span, and the extension ratios `r0, r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProgramPoint {
    pub d: f64,
    pub e0: f64,
    pub e: f64,
    pub f: f64,
    pub q0: f64,
    pub q: f64,
    pub p: f64,
    pub r0: f64,
    pub r: f64,
}

pub(crate) const VARIABLES: [&str; 8] = ["e0", "e", "f", "q0", "q", "p", "r0", "r"];

impl ProgramPoint {
    pub(crate) fn get(&self, i: usize) -> f64 {
        [self.e0, self.e, self.f, self.q0, self.q, self.p, self.r0, self.r][i]
    }

    pub(crate) fn set(&mut self, i: usize, v: f64) {
        *[
            &mut self.e0,
            &mut self.e,
            &mut self.f,
            &mut self.q0,
            &mut self.q,
            &mut self.p,
            &mut self.r0,
            &mut self.r,
        ][i] = v;
    }

    /// The interval of variable `i` induced by the variables it depends on:
    /// `e0, e, f` are free in `[1-d, 1]`, the rest are bounded by earlier
    /// ones.
    pub(crate) fn interval(&self, i: usize) -> (f64, f64) {
        let d = self.d;
        match i {
            0..=2 => (1.0 - d, 1.0),
            3 => (self.e0 + self.e - 1.0 - d, self.e0),
            4 => (self.e + self.f - 1.0 - d, self.e),
            5 => (self.q0 + self.q - self.e - d, self.q0),
            6 => (0.5, self.e0),
            7 => (0.0, self.q0),
            _ => unreachable!(),
        }
    }

    /// Human-readable descriptions of every violated constraint.
    pub fn violations(&self, tol: f64) -> Vec<String> {
        let mut out = Vec::new();
        if check_d(self.d).is_err() {
            out.push(format!("d = {} outside [0, 1/6)", self.d));
        }
        for (i, name) in VARIABLES.iter().enumerate() {
            let (lo, hi) = self.interval(i);
            let v = self.get(i);
            if !(v >= lo - tol && v <= hi + tol) {
                out.push(format!("{name} = {v} outside [{lo}, {hi}]"));
            }
        }
        out
    }

    pub fn is_feasible(&self) -> bool {
        self.violations(FEASIBILITY_TOL).is_empty()
    }
}

fn check_density(name: &'static str, value: f64, d: f64) -> Result<()> {
    let (lo, hi) = (1.0 - d, 1.0);
    if !(value >= lo - FEASIBILITY_TOL && value <= hi + FEASIBILITY_TOL) {
        return Err(Error::Domain { name, value, lo, hi });
    }
    Ok(())
}

/// `Ŵ_3 = e0 r0 ( (1/q0)(1/e - 1/e0) + r (1/p) ( (1/q)(1/e - 1/f) + (1/q0)(1/e - 1/e0) ) )`.
pub fn w3_eval(pt: &ProgramPoint) -> Result<f64> {
    check_d(pt.d)?;
    let bad = pt.violations(FEASIBILITY_TOL);
    if !bad.is_empty() {
        return Err(Error::InfeasiblePoint(bad));
    }
    Ok(w3_raw(pt))
}

pub(crate) fn w3_raw(pt: &ProgramPoint) -> f64 {
    let ProgramPoint {
        e0, e, f, q0, q, p, r0, r, ..
    } = *pt;
    let first = (1.0 / e - 1.0 / e0) / q0;
    e0 * r0 * (first + r * (((1.0 / e - 1.0 / f) / q + first) / p))
}

/// `Ŵ_4(e0, f) = e0² ( A + (e0-2d)/(e0+f-1-4d) · ( (1/(1-d) - 1/f)/(f-2d) + A ) )`
/// with `A = (1/(1-d) - 1/e0)/(e0-2d)`.
pub fn w4_eval(d: f64, e0: f64, f: f64) -> Result<f64> {
    check_d(d)?;
    check_density("e0", e0, d)?;
    check_density("f", f, d)?;
    Ok(w4_raw(d, e0, f))
}

pub(crate) fn w4_raw(d: f64, e0: f64, f: f64) -> f64 {
    let top = 1.0 / (1.0 - d);
    let a = (top - 1.0 / e0) / (e0 - 2.0 * d);
    e0 * e0 * (a + (e0 - 2.0 * d) / (e0 + f - 1.0 - 4.0 * d) * ((top - 1.0 / f) / (f - 2.0 * d) + a))
}

/// `Ŵ_5(f) = (1/(1-d) - 1)/(1-2d) + (1-2d)/(f-4d) · ( (1/(1-d) - 1/f)/(f-2d) + (1/(1-d) - 1)/(1-2d) )`.
pub fn w5_eval(d: f64, f: f64) -> Result<f64> {
    check_d(d)?;
    check_density("f", f, d)?;
    Ok(w5_raw(d, f))
}

pub(crate) fn w5_raw(d: f64, f: f64) -> f64 {
    let top = 1.0 / (1.0 - d);
    let a = (top - 1.0) / (1.0 - 2.0 * d);
    a + (1.0 - 2.0 * d) / (f - 4.0 * d) * ((top - 1.0 / f) / (f - 2.0 * d) + a)
}

/// `Ŵ_5(1) = (8d² - 3d) / ((d-1)(2d-1)(4d-1))`.
pub fn w5_at_one(d: f64) -> Result<f64> {
    check_d(d)?;
    Ok((8.0 * d * d - 3.0 * d) / ((d - 1.0) * (2.0 * d - 1.0) * (4.0 * d - 1.0)))
}

/// `η(f) = f³ + (2-11d) f² + (23d²-3) f + (17d³ - 23d² + 5d + 1)`.
pub fn eta(d: f64, f: f64) -> f64 {
    ((f + (2.0 - 11.0 * d)) * f + (23.0 * d * d - 3.0)) * f
        + (((17.0 * d - 23.0) * d + 5.0) * d + 1.0)
}

/// The (P3) point with `e0 = 1`, `e = 1-d`, every triple density at its
/// lower bound and `r0 = e0`, `r = q0`, at which `Ŵ_3 = Ŵ_5(f)`.
pub fn optimal_point_p3(d: f64, f: f64) -> Result<ProgramPoint> {
    check_d(d)?;
    check_density("f", f, d)?;
    let (e0, e) = (1.0, 1.0 - d);
    let q0 = e0 + e - 1.0 - d;
    let q = e + f - 1.0 - d;
    let p = q0 + q - e - d;
    Ok(ProgramPoint {
        d,
        e0,
        e,
        f,
        q0,
        q,
        p,
        r0: e0,
        r: q0,
    })
}
