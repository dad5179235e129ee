use rayon::prelude::*;
use serde::Serialize;

use super::{reverse_mask, ForbiddenFamily, TypeGraph, TypeKind};
use crate::error::{Error, Result};

/// Largest number of raw label assignments [`enumerate_types`] will scan.
pub const ENUMERATION_CAP: u64 = 5_000_000;

/// Types into which no member of a forbidden family embeds, one per
/// isomorphism class, up to `size_bound` vertices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TypeFamily {
    pub types: Vec<TypeGraph>,
    pub size_bound: usize,
}

impl TypeFamily {
    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }
}

/// Nonempty submasks of `universe`, ascending.
fn submasks(universe: u8) -> Vec<u8> {
    (1..=universe).filter(|m| m & !universe == 0).collect()
}

pub(crate) fn self_label_choices(kind: TypeKind) -> Vec<u8> {
    let universe = kind.universe();
    submasks(universe).into_iter().filter(|&m| m != universe).collect()
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Whether `labels` is the lexicographically least relabeling of itself.
fn is_canonical(labels: &[u8], k: usize, perms: &[Vec<usize>]) -> bool {
    perms.iter().all(|p| {
        let permuted = (0..k * k).map(|idx| labels[p[idx / k] * k + p[idx % k]]);
        permuted.cmp(labels.iter().copied()) != std::cmp::Ordering::Less
    })
}

/// Lists `K(ℋ)` up to `k_max` vertices: every valid type of `kind`, up to
/// relabeling, into which no member of `family` embeds. Each class is
/// represented by its least row-major label matrix.
pub fn enumerate_types(kind: TypeKind, k_max: usize, family: &ForbiddenFamily) -> Result<TypeFamily> {
    if k_max == 0 {
        return Err(Error::DimensionMismatch("k_max must be at least 1".into()));
    }
    let selfs = self_label_choices(kind);
    let edges = submasks(kind.universe());
    let mut sizes = Vec::with_capacity(k_max);
    let mut total: u64 = 0;
    for k in 1..=k_max {
        let count = (selfs.len() as u64)
            .checked_pow(k as u32)
            .and_then(|s| (edges.len() as u64).checked_pow((k * (k - 1) / 2) as u32).and_then(|e| s.checked_mul(e)))
            .unwrap_or(u64::MAX);
        total = total.saturating_add(count);
        if total > ENUMERATION_CAP {
            return Err(Error::SearchSpaceTooLarge(total));
        }
        sizes.push(count);
    }

    let mut types = Vec::new();
    for (k, &count) in (1..=k_max).zip(&sizes) {
        let perms = permutations(k);
        let found: Vec<Option<TypeGraph>> = (0..count)
            .into_par_iter()
            .map(|code| -> Result<Option<TypeGraph>> {
                let labels = decode(code, k, &selfs, &edges, kind.is_directed());
                if !is_canonical(&labels, k, &perms) {
                    return Ok(None);
                }
                let t = TypeGraph { kind, k, labels };
                Ok((!family.embeds_in(&t)?).then_some(t))
            })
            .collect::<Result<_>>()?;
        types.extend(found.into_iter().flatten());
    }
    Ok(TypeFamily { types, size_bound: k_max })
}

/// The `code`-th label matrix: self labels are the low digits, then the
/// labels `φ(x, y)` for `x < y` in row order.
fn decode(mut code: u64, k: usize, selfs: &[u8], edges: &[u8], directed: bool) -> Vec<u8> {
    let mut labels = vec![0u8; k * k];
    for x in 0..k {
        labels[x * k + x] = selfs[(code % selfs.len() as u64) as usize];
        code /= selfs.len() as u64;
    }
    for x in 0..k {
        for y in (x + 1)..k {
            let m = edges[(code % edges.len() as u64) as usize];
            code /= edges.len() as u64;
            labels[x * k + y] = m;
            labels[y * k + x] = if directed { reverse_mask(m) } else { m };
        }
    }
    labels
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{ColoredGraph, Palette};

    fn family(members: Vec<ColoredGraph>) -> ForbiddenFamily {
        ForbiddenFamily::colored(members).unwrap()
    }

    #[test]
    fn edge_free_single_vertex() {
        let f = family(vec![ColoredGraph::monochromatic(2, 2, 1).unwrap()]);
        let fam = enumerate_types(TypeKind::RType { r: 2 }, 1, &f).unwrap();
        let only = TypeGraph::rtype(2, &[vec![2]], &[]).unwrap();
        assert_eq!(fam.types, vec![only]);
    }

    #[test]
    fn single_vertex_pattern_excludes_everything() {
        let f = family(vec![ColoredGraph::monochromatic(1, 2, 1).unwrap()]);
        assert!(enumerate_types(TypeKind::RType { r: 2 }, 3, &f).unwrap().is_empty());
    }

    #[test]
    fn triangle_free_two_vertex_types() {
        let f = family(vec![ColoredGraph::monochromatic(3, 2, 1).unwrap()]);
        let fam = enumerate_types(TypeKind::RType { r: 2 }, 2, &f).unwrap();
        let wanted = TypeGraph::rtype(2, &[vec![2], vec![2]], &[(0, 1, vec![1, 2])]).unwrap();
        assert!(fam.types.contains(&wanted));
        for t in &fam.types {
            t.validate().unwrap();
        }
        // {1} fibers hold color-1 edges, so no vertex may carry {1}
        assert!(fam.types.iter().all(|t| (0..t.k()).all(|x| t.label(x, x) != 1)));
    }

    #[test]
    fn classes_are_not_repeated() {
        let f = family(vec![ColoredGraph::monochromatic(4, 2, 1).unwrap()]);
        let fam = enumerate_types(TypeKind::RType { r: 2 }, 3, &f).unwrap();
        let perms = permutations(3);
        for (i, a) in fam.types.iter().enumerate() {
            for b in &fam.types[i + 1..] {
                if a.k() == 3 && b.k() == 3 {
                    assert!(perms.iter().all(|p| a.induced(p) != *b));
                }
            }
        }
    }

    #[test]
    fn too_large() {
        let f = ForbiddenFamily::directed(vec![crate::graph::Digraph::from_fn(2, |_, _| crate::Arrow::Bi).unwrap()])
            .unwrap();
        let kind = TypeKind::DirType { palette: Palette::P0 };
        assert!(matches!(enumerate_types(kind, 3, &f), Err(Error::SearchSpaceTooLarge(_))));
        assert!(enumerate_types(kind, 2, &f).is_ok());
    }
}
