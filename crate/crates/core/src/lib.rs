//! Regularity machinery for edge-colored complete graphs and digraphs.
//!
//! * [`graph`]: r-graphs, four-state digraphs, palettes, equipartitions,
//!   seeded samplers and the text file formats.
//! * [`density`]: density vectors, exact and heuristic γ-regularity
//!   certificates, the partition index and the defect Cauchy–Schwarz checks.
//! * [`decomposition`]: the index-increment refinement loop producing a
//!   partition `A` with refinement `B`, and random subcluster selection.
//! * [`embedding`]: embedding-lemma constants and copy counting over block tuples.
//! * [`types`]: r-types and dir-types, type enumeration, `f_K`, edit distance
//!   and the edit-distance bounds for hereditary properties.
//! * [`cli`]: the `regracut` command-line front end.
//!
//! Runnable walkthroughs of each capability live in `examples/`.

pub mod cli;
pub mod decomposition;
pub mod density;
pub mod embedding;
pub mod error;
pub mod graph;
pub mod types;

pub use error::{Error, Result};
pub use graph::{AnyGraph, Arrow, ColoredGraph, Digraph, EdgeColoring, Equipartition, Palette};

/// Slack used by every inequality check on accumulated floating-point sums.
pub const TOL: f64 = 1e-9;
