use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::rgraph::check_pair;
use super::{pair_count, pair_index, ColoredGraph, EdgeColoring};
use crate::error::{Error, Result};

/// State of an ordered vertex pair `(v, w)` in a digraph.
///
/// `Fwd` means the arc `v -> w` is present and `w -> v` is not; `Back` is the
/// mirror image. The discriminant order fixes the density-vector layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arrow {
    None = 0,
    Bi = 1,
    Back = 2,
    Fwd = 3,
}

impl Arrow {
    pub const ALL: [Arrow; 4] = [Arrow::None, Arrow::Bi, Arrow::Back, Arrow::Fwd];

    /// The same pair seen from the other endpoint.
    #[inline]
    pub fn reverse(self) -> Arrow {
        match self {
            Arrow::Fwd => Arrow::Back,
            Arrow::Back => Arrow::Fwd,
            s => s,
        }
    }

    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }

    /// 1-based color number used by [`EdgeColoring`].
    #[inline]
    pub fn color(self) -> usize {
        self as usize + 1
    }

    pub fn from_index(i: usize) -> Option<Arrow> {
        Arrow::ALL.get(i).copied()
    }

    pub fn from_color(c: usize) -> Option<Arrow> {
        c.checked_sub(1).and_then(Arrow::from_index)
    }

    #[inline]
    pub fn is_oriented(self) -> bool {
        matches!(self, Arrow::Fwd | Arrow::Back)
    }

    #[inline]
    pub fn bit(self) -> u8 {
        1 << (self as u8)
    }

    pub fn token(self) -> &'static str {
        match self {
            Arrow::None => "none",
            Arrow::Bi => "bi",
            Arrow::Back => "back",
            Arrow::Fwd => "fwd",
        }
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Arrow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Arrow> {
        match s {
            "none" => Ok(Arrow::None),
            "bi" => Ok(Arrow::Bi),
            "back" => Ok(Arrow::Back),
            "fwd" => Ok(Arrow::Fwd),
            other => Err(Error::BadState(other.to_string())),
        }
    }
}

/// A complete graph whose unordered pairs carry one of four arrow states.
///
/// The state of `{u, v}` is stored once, relative to `u < v`; the ordered view
/// [`Digraph::arrow`] reverses it for `u > v`, so `c(v, w) = →` iff
/// `c(w, v) = ←` by construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    states: Vec<Arrow>,
}

impl Digraph {
    pub fn new(n: usize, assignments: &[(usize, usize, Arrow)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadGraph("a digraph needs at least one vertex".into()));
        }
        let mut states: Vec<Option<Arrow>> = vec![None; pair_count(n)];
        for &(u, v, state) in assignments {
            check_pair(n, u, v)?;
            if u > v {
                return Err(Error::BadState(format!("pair ({u}, {v}) must be listed with u < v")));
            }
            let slot = &mut states[pair_index(u, v)];
            if slot.is_some() {
                return Err(Error::DuplicatePair { u, v });
            }
            *slot = Some(state);
        }
        let mut out = Vec::with_capacity(states.len());
        for v in 0..n {
            for u in 0..v {
                match states[pair_index(u, v)] {
                    Some(s) => out.push(s),
                    None => return Err(Error::MissingPair { u, v }),
                }
            }
        }
        // out was filled in storage order
        Ok(Digraph { n, states: out })
    }

    /// Builds a digraph from the state of every pair `(u, v)` with `u < v`.
    pub fn from_fn(n: usize, mut state: impl FnMut(usize, usize) -> Arrow) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadGraph("a digraph needs at least one vertex".into()));
        }
        let mut states = Vec::with_capacity(pair_count(n));
        for v in 0..n {
            for u in 0..v {
                states.push(state(u, v));
            }
        }
        Ok(Digraph { n, states })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// State of the unordered pair relative to its lower endpoint.
    #[inline]
    pub fn pair_state(&self, u: usize, v: usize) -> Arrow {
        let s = self.states[pair_index(u, v)];
        if u < v {
            s
        } else {
            s.reverse()
        }
    }

    /// Ordered coloring `c(v, w)`.
    #[inline]
    pub fn arrow(&self, v: usize, w: usize) -> Arrow {
        self.pair_state(v, w)
    }

    /// Sets the ordered state `c(v, w)`; `c(w, v)` follows.
    pub(crate) fn set_arrow(&mut self, v: usize, w: usize, state: Arrow) {
        let stored = if v < w { state } else { state.reverse() };
        self.states[pair_index(v, w)] = stored;
    }

    /// All pairs as `(u, v, state)` with `u < v`, ordered by `u` then `v`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, Arrow)> + '_ {
        (0..self.n).flat_map(move |u| ((u + 1)..self.n).map(move |v| (u, v, self.pair_state(u, v))))
    }

    /// Induced subdigraph on `vertices`, relabeled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        let mut states = Vec::with_capacity(pair_count(vertices.len()));
        for (j, &b) in vertices.iter().enumerate() {
            for &a in &vertices[..j] {
                states.push(self.arrow(a, b));
            }
        }
        Digraph { n: vertices.len(), states }
    }

    /// Bitmask of the states used by some pair (closed under reversal).
    pub fn used_states(&self) -> u8 {
        self.states.iter().fold(0u8, |m, s| m | s.bit() | s.reverse().bit())
    }

    /// Reads the digraph as a 4-colored graph, the color of `{u, v}` being the
    /// state relative to `u < v` (none = 1, bi = 2, back = 3, fwd = 4).
    pub fn to_colored(&self) -> ColoredGraph {
        ColoredGraph::from_fn(self.n, 4, |u, v| self.pair_state(u, v).color()).expect("four states always fit")
    }
}

impl EdgeColoring for Digraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn color_count(&self) -> usize {
        4
    }

    #[inline]
    fn color(&self, v: usize, w: usize) -> usize {
        self.arrow(v, w).color()
    }
}
