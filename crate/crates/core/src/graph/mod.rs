//! Complete edge-colored graphs, digraphs with four arrow states, palettes,
//! equipartitions, seeded samplers and the plain-text file formats.

mod digraph;
pub mod io;
mod palette;
mod partition;
mod rgraph;
mod sample;

pub use digraph::{Arrow, Digraph};
pub(crate) use palette::palette_for_mask;
pub use palette::{palette_of, Palette};
pub use partition::{equipartition, refine_equipartition, Equipartition};
pub use rgraph::ColoredGraph;
pub use sample::{sample_digraph, sample_rgraph, ArrowProbabilities, ColorProbabilities, ProbabilityVector};

/// Common view of r-graphs and digraphs as colorings of ordered vertex pairs.
///
/// Colors are numbered from 1. An r-graph uses `1..=r`; a digraph uses
/// `1..=4` for the states none, bi, back (←) and fwd (→) in that order, so
/// `color(v, w)` of a digraph is the arrow seen when walking from `v` to `w`.
pub trait EdgeColoring: Sync {
    fn vertex_count(&self) -> usize;

    /// Length of a density vector over this graph.
    fn color_count(&self) -> usize;

    /// Color of the ordered pair `(v, w)`, `v != w`.
    fn color(&self, v: usize, w: usize) -> usize;
}

/// Graphs whose pair colors can be changed in place.
pub(crate) trait Recolor: EdgeColoring + Clone + Send {
    /// Sets the ordered color `c(v, w)`; for digraphs `c(w, v)` follows.
    fn recolor(&mut self, v: usize, w: usize, color: usize);
}

impl Recolor for ColoredGraph {
    fn recolor(&mut self, v: usize, w: usize, color: usize) {
        self.set(v, w, color);
    }
}

impl Recolor for Digraph {
    fn recolor(&mut self, v: usize, w: usize, color: usize) {
        self.set_arrow(v, w, Arrow::from_color(color).expect("digraph colors are 1..=4"));
    }
}

/// Position of the unordered pair `{u, v}` in upper-triangular storage.
#[inline]
pub(crate) fn pair_index(u: usize, v: usize) -> usize {
    debug_assert_ne!(u, v);
    let (lo, hi) = if u < v { (u, v) } else { (v, u) };
    hi * (hi - 1) / 2 + lo
}

#[inline]
pub(crate) fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// A graph of either kind, as read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyGraph {
    Colored(ColoredGraph),
    Directed(Digraph),
}

impl AnyGraph {
    pub fn vertex_count(&self) -> usize {
        match self {
            AnyGraph::Colored(g) => g.vertex_count(),
            AnyGraph::Directed(g) => g.vertex_count(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            AnyGraph::Colored(_) => "rgraph",
            AnyGraph::Directed(_) => "digraph",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_index_is_a_bijection() {
        let n = 9;
        let mut seen = vec![false; pair_count(n)];
        for v in 0..n {
            for u in 0..v {
                let i = pair_index(u, v);
                assert_eq!(i, pair_index(v, u));
                assert!(!seen[i]);
                seen[i] = true;
            }
        }
        assert!(seen.into_iter().all(|s| s));
    }
}
