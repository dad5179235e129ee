use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Arrow, Digraph};
use crate::error::{Error, Result};

/// The five nontrivial digraph palettes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Palette {
    /// Every state.
    P0,
    /// No nonedges.
    P1,
    /// Oriented graphs: no bi-arcs.
    P2,
    /// Undirected graphs.
    P3,
    /// Tournaments.
    P4,
}

impl Palette {
    pub const ALL: [Palette; 5] = [Palette::P0, Palette::P1, Palette::P2, Palette::P3, Palette::P4];

    pub fn allowed(self) -> &'static [Arrow] {
        use Arrow::*;
        match self {
            Palette::P0 => &[None, Bi, Back, Fwd],
            Palette::P1 => &[Bi, Back, Fwd],
            Palette::P2 => &[None, Back, Fwd],
            Palette::P3 => &[None, Bi],
            Palette::P4 => &[Back, Fwd],
        }
    }

    /// Allowed states as a bitmask over [`Arrow::bit`].
    pub fn mask(self) -> u8 {
        self.allowed().iter().fold(0, |m, a| m | a.bit())
    }

    pub fn contains(self, a: Arrow) -> bool {
        self.mask() & a.bit() != 0
    }

    pub fn id(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Palette {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.id())
    }
}

impl FromStr for Palette {
    type Err = Error;

    fn from_str(s: &str) -> Result<Palette> {
        Palette::ALL
            .into_iter()
            .find(|p| p.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::BadState(format!("unknown palette {s}")))
    }
}

/// The smallest listed palette containing every state used by `g`.
///
/// Ties go to the palette with fewer allowed states, then to the lower id.
pub fn palette_of(g: &Digraph) -> Palette {
    palette_for_mask(g.used_states())
}

pub(crate) fn palette_for_mask(used: u8) -> Palette {
    Palette::ALL
        .into_iter()
        .filter(|p| p.mask() & used == used)
        .min_by_key(|p| (p.allowed().len(), p.id()))
        .expect("P0 contains every state")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn palettes_are_arrow_closed() {
        for p in Palette::ALL {
            assert_eq!(p.contains(Arrow::Fwd), p.contains(Arrow::Back), "{p}");
        }
    }

    #[test]
    fn tournament_is_p4() {
        let g = Digraph::new(3, &[(0, 1, Arrow::Fwd), (0, 2, Arrow::Back), (1, 2, Arrow::Fwd)]).unwrap();
        assert_eq!(palette_of(&g), Palette::P4);
    }

    #[test]
    fn empty_digraph_is_p3() {
        let g = Digraph::from_fn(4, |_, _| Arrow::None).unwrap();
        assert_eq!(palette_of(&g), Palette::P3);
    }

    #[test]
    fn mixed_needs_p0() {
        let g = Digraph::new(3, &[(0, 1, Arrow::None), (0, 2, Arrow::Bi), (1, 2, Arrow::Fwd)]).unwrap();
        assert_eq!(palette_of(&g), Palette::P0);
    }

    #[test]
    fn oriented_and_no_nonedge() {
        let oriented = Digraph::new(3, &[(0, 1, Arrow::None), (0, 2, Arrow::Back), (1, 2, Arrow::Fwd)]).unwrap();
        assert_eq!(palette_of(&oriented), Palette::P2);
        let dense = Digraph::new(3, &[(0, 1, Arrow::Bi), (0, 2, Arrow::Back), (1, 2, Arrow::Fwd)]).unwrap();
        assert_eq!(palette_of(&dense), Palette::P1);
        let single = Digraph::from_fn(1, |_, _| Arrow::None).unwrap();
        assert_eq!(palette_of(&single), Palette::P3);
    }
}
