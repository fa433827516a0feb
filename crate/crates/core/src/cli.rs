//! Command-line interface.
//!
//! Exit codes: 0 success, 1 input error, 2 violated precondition, 3 a
//! negative answer (infeasible LP, failed verdict).

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::constructions::{
    complete_hypergraph, parity_blocker, parity_certificate, random_min_codegree,
    space_barrier_tripartite, PartitionedHypergraph,
};
use crate::error::{Error, Result};
use crate::hypergraph::format::{parse_hg, parts_comment, write_hg};
use crate::hypergraph::Hypergraph;
use crate::lp::{build_fsts_lp, solve_feasibility, verify_certificate, ConstraintMode, LpStatus};
use crate::rational::format_rational;
use crate::report::{sha256_hex, RunReport};
use crate::threshold::{
    maximize_p3, maximize_p4, maximize_p5, root_xstar, verify_chain, w5_curve, DEFAULT_SEED,
};
use crate::weighting::{
    check_admissible, nonnegativity_check, weighting_w_h, Admissibility,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "fsts", version, about = "Fractional Steiner triple systems: weightings, LPs and threshold programs")]
struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a hypergraph and write it as .hg.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Build w_H for a 3-graph and check it is a perfect fractional STS.
    Weight {
        file: PathBuf,
        /// Require δ₂^ess(H) > 5n/6 instead of the structural clique condition.
        #[arg(long)]
        strict_threshold: bool,
    },
    /// Exact LP feasibility of a perfect fractional Steiner system.
    Lp {
        #[command(subcommand)]
        action: LpAction,
    },
    /// Maximize one of the threshold programs.
    Optimize {
        program: Program,
        #[arg(long)]
        d: f64,
        /// Write (f, Ŵ_5(f)) samples for this d as CSV.
        #[arg(long)]
        curve_csv: Option<PathBuf>,
    },
    /// Locate the root x* of 8x³ - 22x² + 10x - 1 on [0, 1/6].
    Root {
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Check that (P3), (P4) and (P5) share their optimum at a given d.
    VerifyChain {
        #[arg(long)]
        d: f64,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
    /// Certificates for partitioned hypergraphs.
    Certify {
        #[command(subcommand)]
        kind: CertifyKind,
    },
}

#[derive(Args, Debug)]
struct Output {
    /// Destination .hg file.
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Subcommand, Debug)]
enum GenKind {
    /// All r-subsets of n vertices.
    Complete {
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Complete 3-graph minus the transversals of an equitable tripartition.
    SpaceBarrier {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Complete r-graph minus the transversals of an r-partition with odd
    /// first r-1 parts.
    ParityBlocker {
        #[arg(long)]
        r: usize,
        /// Comma-separated part sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Random 3-graph with minimum codegree at least --floor.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        floor: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum LpAction {
    Solve {
        file: PathBuf,
        /// Constrain every (r-1)-set, not only the shadow.
        #[arg(long)]
        all_tuples: bool,
    },
}

#[derive(Subcommand, Debug)]
enum CertifyKind {
    /// Odd/even counting certificate against integral Steiner systems.
    Parity {
        file: PathBuf,
        /// Comma-separated part sizes; read from a "# parts:" comment if omitted.
        #[arg(long, value_delimiter = ',')]
        parts: Option<Vec<usize>>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Program {
    P3,
    P4,
    P5,
}

struct Outcome {
    result: Value,
    digest: Option<String>,
    code: i32,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn read_input(path: &Path) -> Result<(String, String)> {
    let text = std::fs::read_to_string(path)?;
    let digest = sha256_hex(text.as_bytes());
    Ok((text, digest))
}

fn write_generated(out: &Output, h: &Hypergraph, parts: Option<&[usize]>, label: &str) -> Result<Value> {
    let mut comments = vec![label.to_string()];
    if let Some(sizes) = parts {
        let list: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
        comments.push(format!("parts: {}", list.join(" ")));
    }
    std::fs::write(&out.output, write_hg(h, &comments))?;
    let stats = h.codegree_stats();
    eprintln!(
        "{label}: n = {}, m = {}, min codegree = {}, essential = {:?}",
        h.vertex_count(),
        h.edge_count(),
        stats.min_codegree,
        stats.essential_min_codegree
    );
    Ok(json!({
        "output": out.output,
        "uniformity": h.uniformity(),
        "vertex_count": h.vertex_count(),
        "edge_count": h.edge_count(),
        "parts": parts,
        "codegree": stats,
    }))
}

fn partitioned(out: &Output, ph: &PartitionedHypergraph, label: &str) -> Result<Outcome> {
    let sizes = ph.part_sizes();
    Ok(Outcome {
        result: write_generated(out, &ph.hypergraph, Some(&sizes), label)?,
        digest: None,
        code: EXIT_OK,
    })
}

fn gen(kind: &GenKind, seed: u64) -> Result<Outcome> {
    match kind {
        GenKind::Complete { r, n, out } => {
            let h = complete_hypergraph(*r, *n)?;
            Ok(Outcome {
                result: write_generated(out, &h, None, &format!("complete {r}-graph on {n} vertices"))?,
                digest: None,
                code: EXIT_OK,
            })
        }
        GenKind::SpaceBarrier { n, out } => {
            partitioned(out, &space_barrier_tripartite(*n)?, &format!("space barrier on {n} vertices"))
        }
        GenKind::ParityBlocker { r, parts, out } => {
            partitioned(out, &parity_blocker(*r, parts)?, &format!("parity blocker, r = {r}"))
        }
        GenKind::Random { n, floor, out } => {
            let h = random_min_codegree(*n, *floor, seed)?;
            Ok(Outcome {
                result: write_generated(
                    out,
                    &h,
                    None,
                    &format!("random 3-graph, n = {n}, codegree floor {floor}, seed {seed}"),
                )?,
                digest: None,
                code: EXIT_OK,
            })
        }
    }
}

fn weight(file: &Path, strict: bool) -> Result<Outcome> {
    let (text, digest) = read_input(file)?;
    let h = parse_hg(&text)?;
    let mode = if strict {
        Admissibility::StrictThreshold
    } else {
        Admissibility::Structural
    };
    check_admissible(&h, mode)?;
    let w = weighting_w_h(&h)?;
    let report = nonnegativity_check(&h)?;
    eprintln!(
        "w_H: {} edges, weights in [{}, {}], all pair degrees 1: {}, min ordered weight {}, negatives {}, verdict {}",
        w.len(),
        report.pair_degrees.min_weight.as_ref().map(format_rational).unwrap_or_default(),
        report.pair_degrees.max_weight.as_ref().map(format_rational).unwrap_or_default(),
        report.pair_degrees.all_degrees_one,
        report.min_ordered_weight.as_ref().map(format_rational).unwrap_or_default(),
        report.negatives.len(),
        report.verdict
    );
    let code = if report.verdict { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(Outcome {
        result: json!({
            "admissibility": mode,
            "weighting": w,
            "pair_degrees": report.pair_degrees,
            "nonnegativity": {
                "vertex_count": report.vertex_count,
                "essential_min_codegree": report.essential_min_codegree,
                "meets_threshold": report.meets_threshold,
                "min_ordered_weight": report.min_ordered_weight.as_ref().map(format_rational),
                "argmin": report.argmin,
                "negatives": report.negatives,
            },
            "verdict": report.verdict,
        }),
        digest: Some(digest),
        code,
    })
}

fn lp(file: &Path, all_tuples: bool) -> Result<Outcome> {
    let (text, digest) = read_input(file)?;
    let h = parse_hg(&text)?;
    let mode = if all_tuples {
        ConstraintMode::AllTuples
    } else {
        ConstraintMode::ShadowOnly
    };
    let problem = build_fsts_lp(&h, mode);
    let outcome = solve_feasibility(&problem);
    let verified = verify_certificate(&problem, &outcome)?;
    eprintln!(
        "LP: {} variables, {} constraints, {:?} after {} pivots, verified: {verified}",
        problem.variable_count(),
        problem.constraint_count(),
        outcome.status,
        outcome.pivots
    );
    let code = match outcome.status {
        LpStatus::Feasible => EXIT_OK,
        LpStatus::Infeasible => EXIT_NEGATIVE,
    };
    Ok(Outcome {
        result: json!({
            "mode": mode,
            "variables": problem.variable_count(),
            "constraints": problem.constraint_count(),
            "status": outcome.status,
            "witness": outcome.witness,
            "certificate": outcome.certificate,
            "pivots": outcome.pivots,
            "verified": verified,
        }),
        digest: Some(digest),
        code,
    })
}

fn optimize(program: Program, d: f64, seed: u64, curve: Option<&Path>) -> Result<Outcome> {
    let result = match program {
        Program::P5 => {
            let r = maximize_p5(d)?;
            json!({"program": "p5", "d": d, "value": r.value, "point": {"f": r.f}, "iterations": r.iterations})
        }
        Program::P4 => {
            let r = maximize_p4(d)?;
            json!({"program": "p4", "d": d, "value": r.value, "point": {"e0": r.e0, "f": r.f}, "iterations": r.iterations})
        }
        Program::P3 => {
            let r = maximize_p3(d, seed)?;
            json!({
                "program": "p3",
                "d": d,
                "value": r.value,
                "point": r.point,
                "iterations": r.iterations,
                "seed": seed,
                "starts": r.starts,
                "best_start": r.best_start,
            })
        }
    };
    eprintln!("{program:?} at d = {d}: optimum {}", result["value"]);
    if let Some(path) = curve {
        let mut csv = String::from("f,w5\n");
        for [f, v] in w5_curve(d, 1000)? {
            csv.push_str(&format!("{f},{v}\n"));
        }
        std::fs::write(path, csv)?;
    }
    Ok(Outcome {
        result,
        digest: None,
        code: EXIT_OK,
    })
}

fn certify_parity(file: &Path, parts: Option<&[usize]>) -> Result<Outcome> {
    let (text, digest) = read_input(file)?;
    let h = parse_hg(&text)?;
    let sizes = match parts {
        Some(p) => p.to_vec(),
        None => parts_comment(&text).ok_or_else(|| {
            Error::InvalidPartition("no --parts given and no \"# parts:\" comment in the file".into())
        })?,
    };
    let ph = PartitionedHypergraph::from_sizes(h, &sizes)?;
    let cert = parity_certificate(&ph)?;
    eprintln!(
        "parity: M = {} ({}), {} offending edges, verdict {}",
        cert.m,
        if cert.m_odd { "odd" } else { "even" },
        cert.offending_edges.len(),
        cert.verdict
    );
    Ok(Outcome {
        code: if cert.verdict { EXIT_OK } else { EXIT_NEGATIVE },
        result: to_value(&cert),
        digest: Some(digest),
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let plain = |result: Value| Outcome {
        result,
        digest: None,
        code: EXIT_OK,
    };
    match &cli.command {
        Command::Gen { kind } => gen(kind, cli.seed),
        Command::Weight {
            file,
            strict_threshold,
        } => weight(file, *strict_threshold),
        Command::Lp {
            action: LpAction::Solve { file, all_tuples },
        } => lp(file, *all_tuples),
        Command::Optimize {
            program,
            d,
            curve_csv,
        } => optimize(*program, *d, cli.seed, curve_csv.as_deref()),
        Command::Root { tol } => {
            let r = root_xstar(*tol)?;
            eprintln!("x* = {:.12}, 1 - x* = {:.12}", r.x_star, r.threshold);
            Ok(plain(to_value(&r)))
        }
        Command::VerifyChain { d, tol } => {
            let r = verify_chain(*d, *tol, cli.seed)?;
            eprintln!("d = {d}: P3 {} P4 {} P5 {}, agree: {}", r.p3, r.p4, r.p5, r.verdict);
            Ok(Outcome {
                code: if r.verdict { EXIT_OK } else { EXIT_NEGATIVE },
                result: to_value(&r),
                digest: None,
            })
        }
        Command::Certify {
            kind: CertifyKind::Parity { file, parts },
        } => certify_parity(file, parts.as_deref()),
    }
}

/// Prints to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn exit_code(err: &Error) -> i32 {
    if err.is_precondition() {
        EXIT_PRECONDITION
    } else {
        EXIT_INPUT
    }
}

/// Runs the CLI on the given arguments and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    if let Some(threads) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let start = Instant::now();
    let outcome = match dispatch(&cli) {
        Ok(outcome) => outcome,
        Err(err) => {
            eprintln!("error: {err}");
            let code = exit_code(&err);
            emit(&json!({"error": err.to_string(), "exit_code": code}).to_string());
            return code;
        }
    };
    let report = RunReport {
        command: argv
            .iter()
            .skip(1)
            .map(|a| a.to_string_lossy().into_owned())
            .collect(),
        input_digest: outcome.digest,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        version: env!("CARGO_PKG_VERSION"),
        result: outcome.result,
    };
    let text = serde_json::to_string_pretty(&report).expect("reports serialize");
    emit(&text);
    if let Some(path) = &cli.json_out {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }
    outcome.code
}
