//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::{oracle_feasible, ordered_edges, random_admissible};
use fsts_core::constructions::{
    complete_hypergraph, parity_blocker, parity_certificate, random_min_codegree,
    space_barrier_tripartite,
};
use fsts_core::hypergraph::binomial;
use fsts_core::lp::{
    build_fsts_lp, solve_feasibility, space_barrier_bound, verify_certificate, ConstraintMode,
    LpStatus,
};
use fsts_core::rational::{int, rat};
use fsts_core::threshold::{
    eta, maximize_p3, maximize_p4, maximize_p5, optimal_point_p3, root_xstar, threshold_codegree,
    w3_eval, w4_eval, w5_at_one, w5_eval, x_star, D_MAX, DEFAULT_SEED,
};
use fsts_core::weighting::{
    edge_gadget, gadget_degree, nonnegativity_check, ordered_weight, ordered_weight_expanded,
    ordered_weights_all, verify_fractional_sts, w1, w1_expanded, w1_normalized, weighting_w_h,
};
use fsts_core::{Error, Hypergraph, Rational, Vertex};
use itertools::Itertools;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(budget: Duration, start: Instant) -> Outcome {
    let took = start.elapsed();
    ensure!(took < budget, "took {took:.2?}, budget {budget:?}");
    Ok(format!("{took:.2?}"))
}

fn root_reproduction() -> Outcome {
    let start = Instant::now();
    let r = root_xstar(1e-10).map_err(|e| e.to_string())?;
    ensure!((r.x_star - 0.142_165_773_7).abs() <= 1e-9, "x* = {}", r.x_star);
    ensure!(r.threshold > 0.8578 && r.threshold < 0.8579, "1 - x* = {}", r.threshold);
    let t = within(Duration::from_secs(1), start)?;
    Ok(format!("x* = {:.12}, 1 - x* = {:.10}, {t}", r.x_star, r.threshold))
}

fn closed_form_agreement() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let d = rng.gen_range(0.0..D_MAX);
        let gap = (w5_at_one(d).unwrap() - w5_eval(d, 1.0).unwrap()).abs();
        worst = worst.max(gap);
    }
    ensure!(worst <= 1e-12, "max gap {worst:e}");
    let at_root = w5_at_one(x_star()).unwrap();
    ensure!((at_root - 1.0).abs() <= 1e-8, "w5_at_one(x*) = {at_root}");
    let t = within(Duration::from_secs(1), start)?;
    Ok(format!("max gap {worst:.1e}, w5_at_one(x*) = {at_root:.12}, {t}"))
}

fn appendix_values() -> Outcome {
    let start = Instant::now();
    let p3 = maximize_p3(0.1421, DEFAULT_SEED).map_err(|e| e.to_string())?.value;
    let p5 = maximize_p5(0.15).map_err(|e| e.to_string())?.value;
    ensure!(p3 <= 1.0 + 1e-6, "P3(0.1421) = {p3}");
    ensure!(p5 >= 1.1344, "P5(0.15) = {p5}");
    let t = within(Duration::from_secs(30), start)?;
    Ok(format!("P3(0.1421) = {p3:.9}, P5(0.15) = {p5:.6}, {t}"))
}

fn reduction_chain() -> Outcome {
    let start = Instant::now();
    let mut worst = (0.0f64, 0.0f64);
    for d in [0.0, 0.05, 0.10, 0.142_165_773_7] {
        let p5 = maximize_p5(d).map_err(|e| e.to_string())?.value;
        let p4 = maximize_p4(d).map_err(|e| e.to_string())?.value;
        let p3 = maximize_p3(d, DEFAULT_SEED).map_err(|e| e.to_string())?.value;
        ensure!((p4 - p5).abs() <= 1e-6, "d = {d}: P4 = {p4}, P5 = {p5}");
        ensure!((p3 - p5).abs() <= 1e-4, "d = {d}: P3 = {p3}, P5 = {p5}");
        worst = (worst.0.max((p4 - p5).abs()), worst.1.max((p3 - p5).abs()));
    }
    let mut grid_gap = 0.0f64;
    for i in 0..=20 {
        let d = D_MAX * i as f64 / 20.0;
        for j in 0..=20 {
            let f = 1.0 - d + d * j as f64 / 20.0;
            let pt = optimal_point_p3(d, f).map_err(|e| e.to_string())?;
            let gap = (w3_eval(&pt).map_err(|e| e.to_string())? - w5_eval(d, f).unwrap()).abs();
            grid_gap = grid_gap.max(gap);
        }
    }
    ensure!(grid_gap <= 1e-12, "optimal_point_p3 off by {grid_gap:e}");
    let t = within(Duration::from_secs(120), start)?;
    Ok(format!(
        "|P4-P5| <= {:.1e}, |P3-P5| <= {:.1e}, point gap {grid_gap:.1e}, {t}",
        worst.0, worst.1
    ))
}

fn complete_graph_identities() -> Outcome {
    let start = Instant::now();
    let mut n10 = Duration::ZERO;
    for n in 5..=10 {
        let t0 = Instant::now();
        let h = complete_hypergraph(3, n).unwrap();
        let w = weighting_w_h(&h).map_err(|e| e.to_string())?;
        let report = verify_fractional_sts(&h, &w);
        ensure!(report.all_degrees_one, "K{n}: a pair degree differs from 1");
        // uniform mass |∂H|/3 spread over the edges
        let expected = Rational::new(binomial(n, 2).into(), 3.into())
            / Rational::from_integer(binomial(n, 3).into());
        ensure!(expected == rat(1, n as i64 - 2), "K{n}: mass count");
        ensure!(w.iter().all(|(_, v)| *v == expected), "K{n}: weights not 1/{}", n - 2);
        let ordered = ordered_weights_all(&h).map_err(|e| e.to_string())?;
        let c = int(n as i64 - 2);
        for (o, v) in &ordered {
            ensure!(int(1) - int(6) * &c * v == int(0), "K{n}: w1{o:?} != 0");
        }
        for o in ordered_edges(&h).into_iter().step_by(37) {
            ensure!(w1(&h, &o).unwrap().is_zero(), "K{n}: direct w1{o:?} != 0");
        }
        if n == 10 {
            n10 = t0.elapsed();
        }
    }
    ensure!(n10 < Duration::from_secs(60), "n = 10 took {n10:.2?}");
    Ok(format!("n = 5..10, n = 10 in {n10:.2?}, total {:.2?}", start.elapsed()))
}

fn gadget_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0usize;
    for instance in 0..100 {
        let n = rng.gen_range(5..=10usize);
        let mut verts: Vec<Vertex> = (0..n as Vertex).collect();
        verts.shuffle(&mut rng);
        let clique: Vec<Vertex> = verts[..5].to_vec();
        let edges: Vec<Vec<Vertex>> = (0..n as Vertex)
            .combinations(3)
            .filter(|e| e.iter().all(|v| clique.contains(v)) || rng.gen_bool(0.5))
            .collect();
        let h = Hypergraph::new(3, n, &edges).unwrap();
        let (i, j) = loop {
            let (i, j) = (rng.gen_range(0..5), rng.gen_range(0..5));
            if i != j {
                break (i, j);
            }
        };
        let p = [clique[i], clique[j]];
        let psi = edge_gadget(&h, &clique, p).map_err(|e| e.to_string())?;
        for q in h.shadow() {
            let expected = if q == [p[0].min(p[1]), p[0].max(p[1])] { int(1) } else { int(0) };
            let summed = h
                .edges()
                .iter()
                .filter(|e| q.iter().all(|v| e.contains(v)))
                .fold(Rational::zero(), |acc, e| acc + psi.weight(e));
            ensure!(summed == expected, "instance {instance}: q = {q:?} gets {summed}");
            let reported = gadget_degree(&h, &clique, p, [q[0], q[1]]).map_err(|e| e.to_string())?;
            ensure!(reported == expected, "instance {instance}: gadget_degree({q:?}) = {reported}");
            checked += 1;
        }
    }
    let t = within(Duration::from_secs(10), start)?;
    Ok(format!("100 instances, {checked} shadow pairs, {t}"))
}

fn form_equivalence() -> Outcome {
    let start = Instant::now();
    let mut triples = 0usize;
    for (i, n) in (8..=12).cycle().take(20).enumerate() {
        let h = random_admissible(n, 2 * n, 700 + i as u64);
        ensure!(h.edge_count() < binomial(n, 3) as usize, "instance {i} is complete");
        for o in ordered_edges(&h) {
            let a = ordered_weight(&h, &o).map_err(|e| e.to_string())?;
            let b = ordered_weight_expanded(&h, &o).map_err(|e| e.to_string())?;
            ensure!(a == b, "n = {n}, {o:?}: {a} vs {b}");
            let f1 = w1(&h, &o).unwrap();
            let f2 = w1_expanded(&h, &o).unwrap();
            let f3 = w1_normalized(&h, &o).unwrap();
            ensure!(f1 == f2 && f2 == f3, "n = {n}, {o:?}: w1 forms {f1}, {f2}, {f3}");
            triples += 1;
        }
    }
    let t = within(Duration::from_secs(120), start)?;
    Ok(format!("20 hypergraphs, {triples} ordered triples, {t}"))
}

fn threshold_nonnegativity() -> Outcome {
    let start = Instant::now();
    let mut found = 0usize;
    let mut rejected = Vec::new();
    let mut seed = 0u64;
    'outer: for n in (8..=12).cycle().take(50) {
        let floor = threshold_codegree(n);
        seed += 1;
        match random_min_codegree(n, floor, seed) {
            Ok(h) => {
                let delta = h.essential_min_codegree().map_err(|e| e.to_string())?;
                if delta < floor {
                    continue 'outer;
                }
                let report = nonnegativity_check(&h).map_err(|e| e.to_string())?;
                ensure!(report.verdict, "n = {n}, seed {seed}: verdict false");
                found += 1;
            }
            Err(Error::FloorTooLarge { floor, max }) => rejected.push((n, floor, max)),
            Err(e) => return Err(e.to_string()),
        }
    }
    ensure!(
        found == 50,
        "{found}/50 qualifying instances; required codegree exceeds n - 2 for every n in [8, 12]: {}",
        rejected
            .iter()
            .unique()
            .map(|(n, f, m)| format!("n={n} needs {f} > {m}"))
            .join(", ")
    );
    let t = within(Duration::from_secs(300), start)?;
    Ok(format!("50 instances, {t}"))
}

fn space_barrier() -> Outcome {
    let start = Instant::now();
    for n in 5..=11 {
        let ph = space_barrier_tripartite(n).map_err(|e| e.to_string())?;
        let h = &ph.hypergraph;
        let delta = h.codegree_stats().min_codegree;
        ensure!(
            int(delta as i64) >= rat(2 * n as i64 - 8, 3),
            "n = {n}: codegree {delta} < 2n/3 - 8/3"
        );
        let problem = build_fsts_lp(h, ConstraintMode::ShadowOnly);
        let outcome = solve_feasibility(&problem);
        ensure!(outcome.status == LpStatus::Infeasible, "n = {n}: LP feasible");
        ensure!(
            verify_certificate(&problem, &outcome).map_err(|e| e.to_string())?,
            "n = {n}: certificate rejected"
        );
        let bound = space_barrier_bound(h, &ph.parts).map_err(|e| e.to_string())?;
        let pairs_over_three = Rational::new(binomial(n, 2).into(), 3.into());
        ensure!(
            bound.capacity < pairs_over_three,
            "n = {n}: capacity {} >= C(n,2)/3",
            bound.capacity
        );
    }
    let t = within(Duration::from_secs(60), start)?;
    Ok(format!("n = 5..11, {t}"))
}

fn parity_barrier() -> Outcome {
    let start = Instant::now();
    for (r, sizes, m) in [(3usize, vec![3usize, 3, 3], 9u64), (4, vec![3, 3, 3, 4], 27)] {
        let ph = parity_blocker(r, &sizes).map_err(|e| e.to_string())?;
        let cert = parity_certificate(&ph).map_err(|e| e.to_string())?;
        ensure!(cert.verdict, "r = {r}: verdict false");
        ensure!(cert.m == m, "r = {r}: M = {}", cert.m);
        let labels = ph.labels();
        for e in ph.hypergraph.edges() {
            // transversal (r-1)-tuples of the first r-1 parts inside e
            let covered = e
                .iter()
                .copied()
                .combinations(r - 1)
                .filter(|t| {
                    let mut parts: Vec<usize> = t.iter().map(|&v| labels[v as usize]).collect();
                    parts.sort_unstable();
                    parts == (0..r - 1).collect::<Vec<_>>()
                })
                .count();
            ensure!(covered == 0 || covered == 2, "r = {r}: edge {e:?} covers {covered}");
        }
    }
    let t = within(Duration::from_secs(10), start)?;
    Ok(format!("M = 9 and 27, {t}"))
}

fn lp_oracle() -> Outcome {
    let start = Instant::now();
    let mut cases: Vec<(String, Hypergraph)> = Vec::new();
    for n in 5..=8 {
        cases.push((format!("K{n}"), complete_hypergraph(3, n).unwrap()));
        cases.push((format!("barrier{n}"), space_barrier_tripartite(n).unwrap().hypergraph));
    }
    let mut compared = 0;
    for (name, h) in &cases {
        for mode in [ConstraintMode::ShadowOnly, ConstraintMode::AllTuples] {
            let problem = build_fsts_lp(h, mode);
            let status = solve_feasibility(&problem).status;
            let oracle = oracle_feasible(&problem);
            ensure!(
                (status == LpStatus::Feasible) == oracle,
                "{name} {mode:?}: solver {status:?}, oracle feasible = {oracle}"
            );
            compared += 1;
        }
    }
    let t = within(Duration::from_secs(60), start)?;
    Ok(format!("{compared} problems, {t}"))
}

fn monotonicity() -> Outcome {
    let start = Instant::now();
    for d in [0.0, 0.05, 0.1, x_star()] {
        let grid = |k: usize, steps: usize| (1.0 - d + d * k as f64 / steps as f64).min(1.0);
        let mut prev = f64::NEG_INFINITY;
        for k in 0..10_000 {
            let v = w5_eval(d, grid(k, 9_999)).unwrap();
            ensure!(v >= prev, "d = {d}: Ŵ5 decreases at step {k}: {prev} -> {v}");
            prev = v;
        }
        for j in 0..100 {
            let f = grid(j, 99);
            let mut prev = f64::NEG_INFINITY;
            for k in 0..100 {
                let v = w4_eval(d, grid(k, 99), f).unwrap();
                ensure!(v >= prev, "d = {d}, f = {f}: Ŵ4 decreases at e0 step {k}");
                prev = v;
            }
        }
    }
    let mut worst = 0.0f64;
    for i in 0..=1000 {
        let d = D_MAX * i as f64 / 1000.0;
        let gap = (eta(d, 1.0 - d) - (1.0 - d) * (1.0 - 3.0 * d) * (1.0 - 6.0 * d)).abs();
        worst = worst.max(gap);
    }
    ensure!(worst <= 1e-14, "η gap {worst:e}");
    let t = within(Duration::from_secs(30), start)?;
    Ok(format!("η gap {worst:.1e}, {t}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("root reproduction", root_reproduction),
        ("closed-form agreement", closed_form_agreement),
        ("P3/P5 reference values", appendix_values),
        ("reduction chain", reduction_chain),
        ("complete graph identities", complete_graph_identities),
        ("gadget indicator", gadget_suite),
        ("form equivalence", form_equivalence),
        ("threshold non-negativity", threshold_nonnegativity),
        ("space barrier", space_barrier),
        ("parity barrier", parity_barrier),
        ("LP oracle equivalence", lp_oracle),
        ("monotonicity grids", monotonicity),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                println!("FAIL {:>2} {name}: {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
