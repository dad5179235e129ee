use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{bit, ForbiddenFamily, TypeGraph, ARROW_BITS, BI_BIT, NONE_BIT};
use crate::error::{Error, Result};
use crate::graph::{pair_count, pair_index, palette_for_mask, AnyGraph, Arrow, EdgeColoring, Palette, Recolor};

/// Largest r-graph accepted by [`distance_to_property`].
pub const RGRAPH_EXACT_CAP: usize = 7;
/// Largest digraph accepted by [`distance_to_property`].
pub const DIGRAPH_EXACT_CAP: usize = 6;

/// Number of unordered pairs whose color or state differs.
pub fn edit_distance<G: EdgeColoring + ?Sized>(a: &G, b: &G) -> Result<usize> {
    let n = a.vertex_count();
    if b.vertex_count() != n {
        return Err(Error::SizeMismatch(n, b.vertex_count()));
    }
    Ok((0..n).map(|u| ((u + 1)..n).filter(|&v| a.color(u, v) != b.color(u, v)).count()).sum())
}

/// An injective map `V(H) → V(G)` under which `G` induces exactly `H`.
pub fn find_induced_copy<G: EdgeColoring + ?Sized>(g: &G, h: &G) -> Option<Vec<usize>> {
    if h.vertex_count() > g.vertex_count() {
        return None;
    }
    let mut map = Vec::with_capacity(h.vertex_count());
    let mut used = vec![false; g.vertex_count()];
    extend_copy(g, h, &mut map, &mut used).then_some(map)
}

fn extend_copy<G: EdgeColoring + ?Sized>(g: &G, h: &G, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let b = map.len();
    if b == h.vertex_count() {
        return true;
    }
    for x in 0..g.vertex_count() {
        if used[x] || !map.iter().enumerate().all(|(a, &y)| g.color(y, x) == h.color(a, b)) {
            continue;
        }
        used[x] = true;
        map.push(x);
        if extend_copy(g, h, map, used) {
            return true;
        }
        map.pop();
        used[x] = false;
    }
    false
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyDistance {
    pub distance: usize,
    /// A closest graph with no induced member of the family.
    #[serde(skip)]
    pub witness: AnyGraph,
}

/// Exact distance from `g` to the property of having no induced member of
/// `family`. Digraph edits stay inside the smallest palette holding the
/// states of `g` and of the family.
pub fn distance_to_property(g: &AnyGraph, family: &ForbiddenFamily) -> Result<PropertyDistance> {
    match (g, family) {
        (AnyGraph::Colored(g), ForbiddenFamily::Colored(members)) => {
            if members[0].r() != g.r() {
                return Err(Error::KindMismatch(format!("graph has r = {}, family has r = {}", g.r(), members[0].r())));
            }
            check_cap(g.n(), RGRAPH_EXACT_CAP)?;
            let colors: Vec<usize> = (1..=g.r()).collect();
            let (distance, witness) = exact_distance(g, members, &colors)?;
            Ok(PropertyDistance { distance, witness: AnyGraph::Colored(witness) })
        }
        (AnyGraph::Directed(g), ForbiddenFamily::Directed(members)) => {
            let palette = palette_for_mask(g.used_states() | family.used_states());
            distance_to_digraph_property(g, members, palette)
                .map(|(distance, w)| PropertyDistance { distance, witness: AnyGraph::Directed(w) })
        }
        _ => Err(Error::KindMismatch("graph and family are of different kinds".into())),
    }
}

fn distance_to_digraph_property(
    g: &crate::graph::Digraph,
    members: &[crate::graph::Digraph],
    palette: Palette,
) -> Result<(usize, crate::graph::Digraph)> {
    check_cap(g.n(), DIGRAPH_EXACT_CAP)?;
    let colors: Vec<usize> = palette.allowed().iter().map(|a| a.color()).collect();
    exact_distance(g, members, &colors)
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::TooLargeForExact { n, cap })
    } else {
        Ok(())
    }
}

/// Iterative deepening on the number of edits. A graph containing an
/// induced copy must change some pair inside it, so each node branches on
/// the copy's free pairs; a pair is frozen once a branch has tried it.
fn exact_distance<G: Recolor>(g: &G, members: &[G], colors: &[usize]) -> Result<(usize, G)> {
    let n = g.vertex_count();
    let mut work = g.clone();
    let mut fixed = vec![false; pair_count(n)];
    for budget in 0..=pair_count(n) {
        if search(&mut work, members, colors, &mut fixed, budget) {
            return Ok((budget, work));
        }
    }
    Err(Error::EmptyProperty(n))
}

fn search<G: Recolor>(g: &mut G, members: &[G], colors: &[usize], fixed: &mut [bool], budget: usize) -> bool {
    let Some(copy) = members.iter().find_map(|h| find_induced_copy(g, h)) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    let mut free = Vec::new();
    for (a, &x) in copy.iter().enumerate() {
        for &y in &copy[a + 1..] {
            let (u, v) = (x.min(y), x.max(y));
            if !fixed[pair_index(u, v)] {
                free.push((u, v));
            }
        }
    }
    let mut frozen = Vec::with_capacity(free.len());
    for (u, v) in free {
        let idx = pair_index(u, v);
        let original = g.color(u, v);
        fixed[idx] = true;
        frozen.push(idx);
        for &c in colors.iter().filter(|&&c| c != original) {
            g.recolor(u, v, c);
            if search(g, members, colors, fixed, budget - 1) {
                return true;
            }
        }
        g.recolor(u, v, original);
    }
    for idx in frozen {
        fixed[idx] = false;
    }
    false
}

/// How vertices are sent to the vertices of a type.
#[derive(Clone, Debug, PartialEq)]
pub enum Assignment {
    /// `map[v]` is the type vertex of `v`.
    Explicit(Vec<usize>),
    /// Vertex `v` goes to `v mod k`.
    Balanced,
    /// The cheapest of `trials` seeded shuffles, each dealt round-robin.
    BestOf { trials: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fit {
    #[serde(skip)]
    pub graph: AnyGraph,
    pub cost: usize,
    pub assignment: Vec<usize>,
}

/// Recolors `g` so that it maps to `k` under the assignment, changing a pair
/// only when its color is not allowed and then to the lowest allowed color.
/// In a dir-type fiber with a single arrow, oriented pairs point from the
/// lower to the higher vertex.
pub fn fit_to_type(g: &AnyGraph, k: &TypeGraph, assignment: &Assignment) -> Result<Fit> {
    match g {
        AnyGraph::Colored(c) => {
            super::check_kind(false, Some(c.r()), k)?;
            fit_generic(c, k, assignment).map(|(h, cost, map)| Fit {
                graph: AnyGraph::Colored(h),
                cost,
                assignment: map,
            })
        }
        AnyGraph::Directed(d) => {
            super::check_kind(true, None, k)?;
            fit_generic(d, k, assignment).map(|(h, cost, map)| Fit {
                graph: AnyGraph::Directed(h),
                cost,
                assignment: map,
            })
        }
    }
}

fn fit_generic<G: Recolor>(g: &G, k: &TypeGraph, assignment: &Assignment) -> Result<(G, usize, Vec<usize>)> {
    let n = g.vertex_count();
    let round_robin = |order: &[usize]| {
        let mut map = vec![0; n];
        for (pos, &v) in order.iter().enumerate() {
            map[v] = pos % k.k();
        }
        map
    };
    let maps: Vec<Vec<usize>> = match assignment {
        Assignment::Explicit(map) => {
            if map.len() != n || map.iter().any(|&x| x >= k.k()) {
                return Err(Error::DimensionMismatch(format!(
                    "assignment of length {} into a type on {} vertices for a graph on {n}",
                    map.len(),
                    k.k()
                )));
            }
            vec![map.clone()]
        }
        Assignment::Balanced => vec![round_robin(&(0..n).collect::<Vec<_>>())],
        Assignment::BestOf { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            (0..(*trials).max(1))
                .map(|_| {
                    let mut order: Vec<usize> = (0..n).collect();
                    order.shuffle(&mut rng);
                    round_robin(&order)
                })
                .collect()
        }
    };
    let mut best: Option<(G, usize, Vec<usize>)> = None;
    for map in maps {
        let fitted = conform(g, k, &map);
        let cost = edit_distance(g, &fitted)?;
        if best.as_ref().is_none_or(|b| cost < b.1) {
            best = Some((fitted, cost, map));
        }
    }
    Ok(best.expect("at least one assignment"))
}

fn lowest(mask: u8) -> usize {
    mask.trailing_zeros() as usize + 1
}

fn conform<G: Recolor>(g: &G, k: &TypeGraph, map: &[usize]) -> G {
    let mut out = g.clone();
    let n = g.vertex_count();
    let directed = k.kind().is_directed();
    for v in 0..n {
        for w in (v + 1)..n {
            let (x, y) = (map[v], map[w]);
            let c = g.color(v, w);
            if x != y {
                let allowed = k.label(x, y);
                if allowed & bit(c) == 0 {
                    out.recolor(v, w, lowest(allowed));
                }
                continue;
            }
            let own = k.label(x, x);
            if !directed {
                if own & bit(c) == 0 {
                    out.recolor(v, w, lowest(own));
                }
                continue;
            }
            // fiber states: none, bi and, when an arrow is allowed, fwd along vertex order
            let arrows = own & ARROW_BITS;
            let ok = match Arrow::from_color(c).expect("digraph colors") {
                Arrow::None => own & NONE_BIT != 0,
                Arrow::Bi => own & BI_BIT != 0,
                Arrow::Fwd => arrows != 0,
                Arrow::Back => arrows == ARROW_BITS,
            };
            if !ok {
                let mut fiber = own & (NONE_BIT | BI_BIT);
                if arrows != 0 {
                    fiber |= bit(Arrow::Fwd.color());
                }
                out.recolor(v, w, lowest(fiber));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{ColoredGraph, Digraph};

    fn k3(color: usize) -> ColoredGraph {
        ColoredGraph::monochromatic(3, 2, color).unwrap()
    }

    #[test]
    fn edit_distance_examples() {
        let g = k3(1);
        assert_eq!(edit_distance(&g, &g).unwrap(), 0);
        assert_eq!(edit_distance(&k3(1), &k3(2)).unwrap(), 3);
        let mut h = g.clone();
        h.recolor(0, 2, 2);
        assert_eq!(edit_distance(&g, &h).unwrap(), 1);
        assert!(matches!(
            edit_distance(&g, &ColoredGraph::monochromatic(4, 2, 1).unwrap()),
            Err(Error::SizeMismatch(3, 4))
        ));
    }

    #[test]
    fn triangle_needs_one_edit() {
        let f = ForbiddenFamily::colored(vec![k3(1)]).unwrap();
        let out = distance_to_property(&AnyGraph::Colored(k3(1)), &f).unwrap();
        assert_eq!(out.distance, 1);
        let AnyGraph::Colored(w) = &out.witness else { panic!() };
        assert!(find_induced_copy(w, &k3(1)).is_none());
        assert_eq!(distance_to_property(&AnyGraph::Colored(k3(2)), &f).unwrap().distance, 0);
    }

    #[test]
    fn forbidding_an_edge_counts_edges() {
        let edge = ColoredGraph::monochromatic(2, 2, 1).unwrap();
        let f = ForbiddenFamily::colored(vec![edge]).unwrap();
        let g = ColoredGraph::from_fn(6, 2, |u, v| if (u * 7 + v) % 3 == 0 { 1 } else { 2 }).unwrap();
        let d = distance_to_property(&AnyGraph::Colored(g.clone()), &f).unwrap();
        assert_eq!(d.distance, g.color_pair_count(1));
    }

    #[test]
    fn caps_and_empty_property() {
        let f = ForbiddenFamily::colored(vec![k3(1)]).unwrap();
        let big = AnyGraph::Colored(ColoredGraph::monochromatic(8, 2, 1).unwrap());
        assert!(matches!(distance_to_property(&big, &f), Err(Error::TooLargeForExact { n: 8, cap: 7 })));
        let point = ForbiddenFamily::colored(vec![ColoredGraph::monochromatic(1, 2, 1).unwrap()]).unwrap();
        assert!(matches!(distance_to_property(&AnyGraph::Colored(k3(2)), &point), Err(Error::EmptyProperty(3))));
    }

    #[test]
    fn digraph_distance_stays_in_palette() {
        // a cyclic triangle, forbidding cyclic triangles; the tournament palette
        // means the fix is one reversal
        let cyc = Digraph::new(3, &[(0, 1, Arrow::Fwd), (1, 2, Arrow::Fwd), (0, 2, Arrow::Back)]).unwrap();
        let f = ForbiddenFamily::directed(vec![cyc.clone()]).unwrap();
        let out = distance_to_property(&AnyGraph::Directed(cyc), &f).unwrap();
        assert_eq!(out.distance, 1);
        let AnyGraph::Directed(w) = out.witness else { panic!() };
        assert_eq!(crate::graph::palette_of(&w), Palette::P4);
    }

    #[test]
    fn fit_examples() {
        let t = TypeGraph::rtype(2, &[vec![2]], &[]).unwrap();
        let g = ColoredGraph::from_fn(6, 2, |u, v| if u + v < 5 { 1 } else { 2 }).unwrap();
        let fit = fit_to_type(&AnyGraph::Colored(g.clone()), &t, &Assignment::Balanced).unwrap();
        assert_eq!(fit.cost, g.color_pair_count(1));

        let two = TypeGraph::rtype(2, &[vec![1], vec![2]], &[(0, 1, vec![1, 2])]).unwrap();
        let conformant = ColoredGraph::from_fn(4, 2, |u, v| if u % 2 == 0 && v % 2 == 0 { 1 } else { 2 }).unwrap();
        let fit = fit_to_type(&AnyGraph::Colored(conformant), &two, &Assignment::Balanced).unwrap();
        assert_eq!(fit.cost, 0);
        assert!(matches!(
            fit_to_type(&AnyGraph::Colored(g), &two, &Assignment::Explicit(vec![0, 1, 2, 0, 0, 0])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn dir_fit_orients_fibers() {
        let t = TypeGraph::dirtype(Palette::P4, &[vec![Arrow::Fwd]], &[]).unwrap();
        let cyc = Digraph::new(3, &[(0, 1, Arrow::Fwd), (1, 2, Arrow::Fwd), (0, 2, Arrow::Back)]).unwrap();
        let fit = fit_to_type(&AnyGraph::Directed(cyc), &t, &Assignment::Balanced).unwrap();
        assert_eq!(fit.cost, 1);
        let AnyGraph::Directed(w) = fit.graph else { panic!() };
        assert!(w.pairs().all(|(_, _, s)| s == Arrow::Fwd));
    }

    #[test]
    fn best_of_is_no_worse_than_its_draws() {
        let two = TypeGraph::rtype(2, &[vec![2], vec![2]], &[(0, 1, vec![1])]).unwrap();
        let g = AnyGraph::Colored(ColoredGraph::from_fn(6, 2, |u, v| if (u < 3) != (v < 3) { 1 } else { 2 }).unwrap());
        let best = fit_to_type(&g, &two, &Assignment::BestOf { trials: 30, seed: 4 }).unwrap();
        let explicit = fit_to_type(&g, &two, &Assignment::Explicit(vec![0, 0, 0, 1, 1, 1])).unwrap();
        assert_eq!(explicit.cost, 0);
        assert!(best.cost <= fit_to_type(&g, &two, &Assignment::Balanced).unwrap().cost);
    }
}
