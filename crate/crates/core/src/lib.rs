//! Fractional Steiner triple systems in 3-uniform hypergraphs of high
//! minimum codegree.
//!
//! The crate builds the clique-weighted edge-gadget weighting `w_H`, decides
//! fractional Steiner system existence exactly by linear programming, and
//! evaluates the optimization programs behind the codegree threshold
//! `1 - x*`, where `x*` is the root of `8x³ - 22x² + 10x - 1` in `[0, 1/6]`.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod hypergraph;
pub mod lp;
pub mod rational;
pub mod report;
pub mod threshold;
pub mod weighting;

pub use error::{Error, Result};
pub use hypergraph::{build_hypergraph, Hypergraph, Vertex};
pub use rational::Rational;
pub use weighting::Weighting;
