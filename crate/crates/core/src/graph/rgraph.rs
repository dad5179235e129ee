use super::{pair_count, pair_index, EdgeColoring};
use crate::error::{Error, Result};

/// A complete graph on `n` labeled vertices whose pairs carry colors `1..=r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    n: usize,
    r: usize,
    colors: Vec<u8>,
}

impl ColoredGraph {
    /// Builds an r-graph from one `(u, v, color)` triple per unordered pair.
    pub fn new(n: usize, r: usize, assignments: &[(usize, usize, usize)]) -> Result<Self> {
        check_params(n, r)?;
        let mut colors = vec![0u8; pair_count(n)];
        for &(u, v, color) in assignments {
            check_pair(n, u, v)?;
            if color == 0 || color > r {
                return Err(Error::ColorOutOfRange { color, r });
            }
            let slot = &mut colors[pair_index(u, v)];
            if *slot != 0 {
                return Err(Error::DuplicatePair { u: u.min(v), v: u.max(v) });
            }
            *slot = color as u8;
        }
        for v in 0..n {
            for u in 0..v {
                if colors[pair_index(u, v)] == 0 {
                    return Err(Error::MissingPair { u, v });
                }
            }
        }
        Ok(ColoredGraph { n, r, colors })
    }

    /// Builds an r-graph by querying `color(u, v)` for every `u < v`.
    pub fn from_fn(n: usize, r: usize, mut color: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        check_params(n, r)?;
        let mut colors = vec![0u8; pair_count(n)];
        for v in 0..n {
            for u in 0..v {
                let c = color(u, v);
                if c == 0 || c > r {
                    return Err(Error::ColorOutOfRange { color: c, r });
                }
                colors[pair_index(u, v)] = c as u8;
            }
        }
        Ok(ColoredGraph { n, r, colors })
    }

    pub fn monochromatic(n: usize, r: usize, color: usize) -> Result<Self> {
        Self::from_fn(n, r, |_, _| color)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Color of the unordered pair `{u, v}`.
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> usize {
        self.colors[pair_index(u, v)] as usize
    }

    pub(crate) fn set(&mut self, u: usize, v: usize, color: usize) {
        debug_assert!(color >= 1 && color <= self.r);
        self.colors[pair_index(u, v)] = color as u8;
    }

    /// All pairs as `(u, v, color)` with `u < v`, ordered by `u` then `v`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| ((u + 1)..self.n).map(move |v| (u, v, self.get(u, v))))
    }

    /// Induced sub-r-graph on `vertices`, relabeled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> ColoredGraph {
        let mut colors = vec![0u8; pair_count(vertices.len())];
        for (j, &b) in vertices.iter().enumerate() {
            for (i, &a) in vertices[..j].iter().enumerate() {
                colors[pair_index(i, j)] = self.get(a, b) as u8;
            }
        }
        ColoredGraph { n: vertices.len(), r: self.r, colors }
    }

    /// Number of pairs with the given color.
    pub fn color_pair_count(&self, color: usize) -> usize {
        self.colors.iter().filter(|&&c| c as usize == color).count()
    }
}

impl EdgeColoring for ColoredGraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn color_count(&self) -> usize {
        self.r
    }

    #[inline]
    fn color(&self, v: usize, w: usize) -> usize {
        self.get(v, w)
    }
}

fn check_params(n: usize, r: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::BadGraph("an r-graph needs at least one vertex".into()));
    }
    if !(2..=u8::MAX as usize).contains(&r) {
        return Err(Error::BadGraph(format!("r = {r} must lie in 2..=255")));
    }
    Ok(())
}

pub(crate) fn check_pair(n: usize, u: usize, v: usize) -> Result<()> {
    for w in [u, v] {
        if w >= n {
            return Err(Error::VertexOutOfRange { vertex: w, n });
        }
    }
    if u == v {
        return Err(Error::BadGraph(format!("self-loop at vertex {u}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_graph() {
        let g = ColoredGraph::new(2, 2, &[(0, 1, 1)]).unwrap();
        assert_eq!(g.get(0, 1), 1);
        assert_eq!(g.get(1, 0), 1);
        assert_eq!(g.pairs().count(), 1);
    }

    #[test]
    fn missing_pair_is_reported() {
        let err = ColoredGraph::new(3, 2, &[(0, 1, 1), (0, 2, 1)]).unwrap_err();
        assert!(matches!(err, Error::MissingPair { u: 1, v: 2 }));
    }

    #[test]
    fn monochromatic_triangle() {
        let g = ColoredGraph::new(3, 3, &[(0, 1, 3), (0, 2, 3), (1, 2, 3)]).unwrap();
        assert!(g.pairs().all(|(_, _, c)| c == 3));
        assert_eq!(g.color_pair_count(3), 3);
    }

    #[test]
    fn duplicate_and_out_of_range() {
        let dup = ColoredGraph::new(2, 2, &[(0, 1, 1), (1, 0, 2)]).unwrap_err();
        assert!(matches!(dup, Error::DuplicatePair { u: 0, v: 1 }));
        let oor = ColoredGraph::new(2, 2, &[(0, 1, 3)]).unwrap_err();
        assert!(matches!(oor, Error::ColorOutOfRange { color: 3, r: 2 }));
        let zero = ColoredGraph::new(2, 2, &[(0, 1, 0)]).unwrap_err();
        assert!(matches!(zero, Error::ColorOutOfRange { color: 0, .. }));
    }

    #[test]
    fn induced_relabels_in_order() {
        let g = ColoredGraph::from_fn(4, 3, |u, v| if u + v == 3 { 2 } else { 1 }).unwrap();
        let h = g.induced(&[3, 0, 2]);
        assert_eq!(h.get(0, 1), 2);
        assert_eq!(h.get(0, 2), 1);
        assert_eq!(h.get(1, 2), 1);
    }
}
