//! The `.hg` text format.
//!
//! ```text
//! # optional comments
//! r n m
//! v v v        (m lines of r zero-based vertex ids)
//! ```
//!
//! Anything after `#` on a line is ignored, as are blank lines.

use std::fmt::Write as _;
use std::path::Path;

use super::{Hypergraph, Vertex};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn numbers(line_no: usize, text: &str) -> Result<Vec<u64>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| parse_err(line_no, format!("expected a non-negative integer, found {tok:?}")))
        })
        .collect()
}

pub fn parse_hg(text: &str) -> Result<Hypergraph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<Vec<Vertex>> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let nums = numbers(line_no, content)?;
        match header {
            None => {
                if nums.len() != 3 {
                    return Err(parse_err(line_no, "header must be \"r n m\""));
                }
                let (r, n, m) = (nums[0] as usize, nums[1] as usize, nums[2] as usize);
                if r < 2 {
                    return Err(parse_err(line_no, format!("uniformity must be at least 2, got {r}")));
                }
                if n > Vertex::MAX as usize {
                    return Err(parse_err(line_no, "too many vertices"));
                }
                header = Some((r, n, m));
            }
            Some((r, n, m)) => {
                if edges.len() == m {
                    return Err(parse_err(line_no, format!("more than {m} edge lines")));
                }
                if nums.len() != r {
                    return Err(parse_err(
                        line_no,
                        format!("edge has {} vertices, expected {r}", nums.len()),
                    ));
                }
                if let Some(v) = nums.iter().find(|&&v| v as usize >= n) {
                    return Err(parse_err(line_no, format!("vertex {v} out of range 0..{n}")));
                }
                let mut e: Vec<Vertex> = nums.iter().map(|&v| v as Vertex).collect();
                e.sort_unstable();
                if e.windows(2).any(|w| w[0] == w[1]) {
                    return Err(parse_err(line_no, "edge repeats a vertex"));
                }
                edges.push(e);
            }
        }
    }
    let (r, n, m) = header.ok_or_else(|| parse_err(last_line.max(1), "missing \"r n m\" header"))?;
    if edges.len() != m {
        return Err(parse_err(
            last_line.max(1),
            format!("expected {m} edge lines, found {}", edges.len()),
        ));
    }
    Hypergraph::new(r, n, &edges).map_err(|e| match e {
        Error::DuplicateEdge(edge) => parse_err(
            duplicate_line(text, &edge).unwrap_or(last_line),
            format!("duplicate edge {edge:?}"),
        ),
        other => other,
    })
}

fn duplicate_line(text: &str, edge: &[Vertex]) -> Option<usize> {
    let mut seen = 0;
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        let Ok(nums) = numbers(idx + 1, content) else { continue };
        let mut e: Vec<Vertex> = nums.iter().map(|&v| v as Vertex).collect();
        e.sort_unstable();
        if e == edge {
            seen += 1;
            if seen == 2 {
                return Some(idx + 1);
            }
        }
    }
    None
}

pub fn read_hg(path: impl AsRef<Path>) -> Result<Hypergraph> {
    parse_hg(&std::fs::read_to_string(path)?)
}

/// Serializes to `.hg`, with optional comment lines placed before the header.
pub fn write_hg(h: &Hypergraph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "{} {} {}", h.uniformity(), h.vertex_count(), h.edge_count());
    for e in h.edges() {
        let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

/// Reads part sizes from a `# parts: a b c` comment, if present.
pub fn parts_comment(text: &str) -> Option<Vec<usize>> {
    text.lines().find_map(|l| {
        let rest = l.trim().strip_prefix('#')?.trim().strip_prefix("parts:")?;
        rest.split_whitespace().map(|t| t.parse().ok()).collect()
    })
}
