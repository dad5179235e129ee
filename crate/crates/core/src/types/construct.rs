use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::self_label_choices;
use super::{
    distance_to_property, enumerate_types, f_k, lower_bound_fk, reverse_mask, ForbiddenFamily, TypeGraph, TypeKind,
};
use super::{ARROW_BITS, BI_BIT, NONE_BIT};
use crate::decomposition::{Certifier, EFunction};
use crate::density::density_vector;
use crate::error::{Error, Result};
use crate::graph::{palette_for_mask, sample_digraph, sample_rgraph, AnyGraph, EdgeColoring, ProbabilityVector};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TypeConstruction {
    Found(TypeGraph),
    NoValidVertexLabels { irregular_pairs: usize },
}

/// Builds a type with one vertex per part. Color `ρ` joins the label of
/// `(u_i, u_j)` when `(V_i, V_j)` is not shown `ℰ(k)`-irregular and
/// `d_ρ(V_i, V_j) ≥ δ`; a pair shown irregular gets the full label, and a
/// pair with no color reaching `δ` gets its densest color. Self labels are
/// searched exhaustively, singletons first in order of density inside the
/// part, for a type into which no member of `family` embeds.
pub fn construct_type_from_partition(
    g: &AnyGraph,
    parts: &[Vec<usize>],
    delta: f64,
    e: &EFunction,
    family: &ForbiddenFamily,
) -> Result<TypeConstruction> {
    match (g, family) {
        (AnyGraph::Colored(c), ForbiddenFamily::Colored(m)) if c.r() == m[0].r() => {
            construct(c, TypeKind::RType { r: c.r() }, parts, delta, e, family)
        }
        (AnyGraph::Directed(d), ForbiddenFamily::Directed(_)) => {
            let palette = palette_for_mask(d.used_states() | family.used_states());
            construct(d, TypeKind::DirType { palette }, parts, delta, e, family)
        }
        _ => Err(Error::KindMismatch("graph and family are of different kinds".into())),
    }
}

fn construct<G: EdgeColoring>(
    g: &G,
    kind: TypeKind,
    parts: &[Vec<usize>],
    delta: f64,
    e: &EFunction,
    family: &ForbiddenFamily,
) -> Result<TypeConstruction> {
    let k = parts.len();
    if k == 0 {
        return Err(Error::EmptySet);
    }
    let universe = kind.universe();
    let gamma = e.eval(k);
    let mut labels = vec![0u8; k * k];
    let mut irregular_pairs = 0;
    for i in 0..k {
        for j in (i + 1)..k {
            let d = density_vector(g, &parts[i], &parts[j])?;
            let mut m = if Certifier::Auto.certify(g, &parts[i], &parts[j], gamma)?.is_irregular() {
                irregular_pairs += 1;
                universe
            } else {
                (1..=d.entries().len()).filter(|&c| d.get(c) >= delta).fold(0u8, |m, c| m | (1 << (c - 1)))
            };
            if m == 0 {
                let densest = (1..=d.entries().len()).fold(1, |b, c| if d.get(c) > d.get(b) { c } else { b });
                m = 1 << (densest - 1);
            }
            labels[i * k + j] = m;
            labels[j * k + i] = if kind.is_directed() { reverse_mask(m) } else { m };
        }
    }

    let choices: Vec<Vec<u8>> = parts.iter().map(|p| ordered_self_labels(g, kind, p)).collect();
    let total = choices.iter().try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64)).unwrap_or(u64::MAX);
    if total > super::ENUMERATION_CAP {
        return Err(Error::SearchSpaceTooLarge(total));
    }
    let mut pick = vec![0usize; k];
    loop {
        for x in 0..k {
            labels[x * k + x] = choices[x][pick[x]];
        }
        let t = TypeGraph::from_labels(kind, k, labels.clone())?;
        if !family.embeds_in(&t)? {
            return Ok(TypeConstruction::Found(t));
        }
        let Some(pos) = (0..k).rev().find(|&x| pick[x] + 1 < choices[x].len()) else {
            return Ok(TypeConstruction::NoValidVertexLabels { irregular_pairs });
        };
        pick[pos] += 1;
        pick[pos + 1..].iter_mut().for_each(|p| *p = 0);
    }
}

/// Proper nonempty self labels, singletons first by descending density of
/// their color inside the part (oriented pairs count for both arrows).
fn ordered_self_labels<G: EdgeColoring>(g: &G, kind: TypeKind, part: &[usize]) -> Vec<u8> {
    let mut counts = [0usize; 8];
    for (a, &v) in part.iter().enumerate() {
        for &w in &part[a + 1..] {
            counts[g.color(v, w) - 1] += 1;
        }
    }
    let weight = |m: u8| -> usize {
        if kind.is_directed() && m & ARROW_BITS != 0 && m & (NONE_BIT | BI_BIT) == 0 {
            counts[2] + counts[3]
        } else {
            counts[m.trailing_zeros() as usize]
        }
    };
    let mut all = self_label_choices(kind);
    all.sort_by_key(|&m| {
        let single = m.count_ones() == 1;
        (m.count_ones(), if single { usize::MAX - weight(m) } else { 0 }, m)
    });
    all
}

/// The kind of type a bound for `family` under `p` ranges over. Dir-types
/// use the smallest palette holding the family's states and the support of `p`.
pub fn type_kind_for(family: &ForbiddenFamily, p: &ProbabilityVector) -> Result<TypeKind> {
    match (family, p) {
        (ForbiddenFamily::Colored(m), ProbabilityVector::Colors(c)) if m[0].r() == c.r() => Ok(family.type_kind()),
        (ForbiddenFamily::Directed(_), ProbabilityVector::Arrows(a)) => {
            let mut support = 0u8;
            if a.none() > 0.0 {
                support |= NONE_BIT;
            }
            if a.p() > 0.0 {
                support |= BI_BIT;
            }
            if a.q() > 0.0 {
                support |= ARROW_BITS;
            }
            Ok(TypeKind::DirType { palette: palette_for_mask(support | family.used_states()) })
        }
        _ => Err(Error::DimensionMismatch("probability vector does not match the family".into())),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub n: usize,
    pub seeds: usize,
    pub mean: f64,
    pub std_dev: f64,
    pub std_error: f64,
    pub min: usize,
    pub max: usize,
    /// `max_K f_K(p)·C(n,2)`, absent when no type was found.
    pub bound: Option<f64>,
    /// `mean − bound`.
    pub gap: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub family_size: usize,
    pub best_type: Option<TypeGraph>,
    pub f_k: Option<f64>,
    pub rows: Vec<ExperimentRow>,
}

/// For every `n`, samples `G(n, p)` with seeds `0..seeds`, computes the exact
/// distance to the property and compares the mean with the `f_K` bound over
/// the types of at most `k_max` vertices.
pub fn experiment_theorem_app(
    family: &ForbiddenFamily,
    p: &ProbabilityVector,
    n_list: &[usize],
    seeds: usize,
    k_max: usize,
) -> Result<ExperimentReport> {
    let kind = type_kind_for(family, p)?;
    let types = enumerate_types(kind, k_max, family)?;
    let best = if types.is_empty() { None } else { Some(lower_bound_fk(p, &types, 0)?.best) };
    let fk = best.as_ref().map(|t| f_k(t, p)).transpose()?;

    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let distances: Vec<usize> = (0..seeds as u64)
            .into_par_iter()
            .map(|seed| {
                let g = match p {
                    ProbabilityVector::Colors(c) => AnyGraph::Colored(sample_rgraph(n, c, seed)?),
                    ProbabilityVector::Arrows(a) => AnyGraph::Directed(sample_digraph(n, a.p(), a.q(), seed)?),
                };
                Ok(distance_to_property(&g, family)?.distance)
            })
            .collect::<Result<_>>()?;
        let count = distances.len().max(1) as f64;
        let mean = distances.iter().sum::<usize>() as f64 / count;
        let var = if distances.len() > 1 {
            distances.iter().map(|&d| (d as f64 - mean).powi(2)).sum::<f64>() / (count - 1.0)
        } else {
            0.0
        };
        let bound = fk.map(|f| f * (n * n.saturating_sub(1) / 2) as f64);
        rows.push(ExperimentRow {
            n,
            seeds,
            mean,
            std_dev: var.sqrt(),
            std_error: (var / count).sqrt(),
            min: distances.iter().copied().min().unwrap_or(0),
            max: distances.iter().copied().max().unwrap_or(0),
            bound,
            gap: bound.map(|b| mean - b),
        });
    }
    Ok(ExperimentReport { family_size: types.len(), best_type: best, f_k: fk, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{ColorProbabilities, ColoredGraph};

    fn e() -> EFunction {
        EFunction::constant(0.25).unwrap()
    }

    #[test]
    fn monochromatic_parts_get_their_color() {
        let g = AnyGraph::Colored(ColoredGraph::monochromatic(12, 2, 2).unwrap());
        let f = ForbiddenFamily::colored(vec![ColoredGraph::monochromatic(2, 2, 1).unwrap()]).unwrap();
        let parts = vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7], vec![8, 9, 10, 11]];
        let TypeConstruction::Found(t) = construct_type_from_partition(&g, &parts, 0.2, &e(), &f).unwrap() else {
            panic!("expected a type")
        };
        assert!((0..3).all(|x| t.colors(x, x) == vec![2]));
        assert!((0..3).all(|x| (0..3).all(|y| x == y || t.colors(x, y) == vec![2])));
    }

    #[test]
    fn point_patterns_block_every_label() {
        let g = AnyGraph::Colored(ColoredGraph::monochromatic(6, 2, 1).unwrap());
        let f = ForbiddenFamily::colored(vec![
            ColoredGraph::monochromatic(1, 2, 1).unwrap(),
            ColoredGraph::monochromatic(1, 2, 2).unwrap(),
        ])
        .unwrap();
        let out = construct_type_from_partition(&g, &[vec![0, 1, 2], vec![3, 4, 5]], 0.1, &e(), &f).unwrap();
        assert!(matches!(out, TypeConstruction::NoValidVertexLabels { .. }));
    }

    #[test]
    fn planted_blocks_avoid_triangles() {
        // color 1 inside blocks, color 2 across
        let g = ColoredGraph::from_fn(12, 2, |u, v| if (u < 6) == (v < 6) { 1 } else { 2 }).unwrap();
        let tri = ColoredGraph::monochromatic(3, 2, 1).unwrap();
        let f = ForbiddenFamily::colored(vec![tri.clone()]).unwrap();
        let parts = vec![(0..6).collect(), (6..12).collect()];
        let TypeConstruction::Found(t) =
            construct_type_from_partition(&AnyGraph::Colored(g), &parts, 0.2, &e(), &f).unwrap()
        else {
            panic!("expected a type")
        };
        assert!(!f.embeds_in(&t).unwrap());
        assert_eq!(t.colors(0, 1), vec![2]);
    }

    #[test]
    fn edge_experiment_matches_edge_count() {
        let f = ForbiddenFamily::colored(vec![ColoredGraph::monochromatic(2, 2, 1).unwrap()]).unwrap();
        let p = ProbabilityVector::Colors(ColorProbabilities::new(vec![0.5, 0.5]).unwrap());
        let report = experiment_theorem_app(&f, &p, &[5], 20, 2).unwrap();
        assert_eq!(report.f_k, Some(0.5));
        assert_eq!(report.rows[0].bound, Some(5.0));
        let degenerate = ProbabilityVector::Colors(ColorProbabilities::new(vec![0.0, 1.0]).unwrap());
        let zero = experiment_theorem_app(&f, &degenerate, &[4], 5, 1).unwrap();
        assert_eq!((zero.rows[0].max, zero.rows[0].bound), (0, Some(0.0)));
    }

    #[test]
    fn empty_type_family_still_reports_distances() {
        let f = ForbiddenFamily::colored(vec![ColoredGraph::monochromatic(1, 2, 1).unwrap()]).unwrap();
        let p = ProbabilityVector::Colors(ColorProbabilities::new(vec![0.5, 0.5]).unwrap());
        // every graph contains a vertex, so the property is empty
        assert!(matches!(experiment_theorem_app(&f, &p, &[3], 2, 1), Err(Error::EmptyProperty(3))));
    }
}
