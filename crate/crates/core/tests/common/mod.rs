//! Brute-force oracles shared by the integration tests. They read graphs
//! through the accessors only and share no search code with the library.

#![allow(dead_code)]

use itertools::Itertools;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use regracut::types::{TypeGraph, TypeKind};
use regracut::{Arrow, ColoredGraph, Digraph, EdgeColoring};

/// Per-color densities by direct counting.
pub fn densities<G: EdgeColoring>(g: &G, a: &[usize], b: &[usize]) -> Vec<f64> {
    let mut counts = vec![0usize; g.color_count()];
    for &v in a {
        for &w in b {
            counts[g.color(v, w) - 1] += 1;
        }
    }
    counts.iter().map(|&c| c as f64 / (a.len() * b.len()) as f64).collect()
}

pub fn sup_dev(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max)
}

fn subsets_at_least(set: &[usize], min: f64) -> Vec<Vec<usize>> {
    (1..=set.len()).filter(|&s| s as f64 >= min).flat_map(|s| set.iter().copied().combinations(s)).collect()
}

/// γ-regularity by enumerating every pair of subsets of real size at least γ|·|.
pub fn brute_regular<G: EdgeColoring>(g: &G, a: &[usize], b: &[usize], gamma: f64) -> bool {
    let base = densities(g, a, b);
    let bs = subsets_at_least(b, gamma * b.len() as f64);
    subsets_at_least(a, gamma * a.len() as f64)
        .iter()
        .all(|x| bs.iter().all(|y| sup_dev(&densities(g, x, y), &base) <= gamma + 1e-9))
}

/// Whether the oriented pairs among `vs` are consistent with some linear order.
pub fn transitive_subdigraph(h: &Digraph, vs: &[usize]) -> bool {
    vs.iter().copied().permutations(vs.len()).any(|order| {
        order.iter().enumerate().all(|(i, &x)| order[i + 1..].iter().all(|&y| h.arrow(x, y) != Arrow::Back))
    })
}

fn all_maps(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).map(|_| 0..k).multi_cartesian_product()
}

/// `H → K` by trying all `k^|V(H)|` maps.
pub fn brute_embeds_colored(h: &ColoredGraph, t: &TypeGraph) -> bool {
    let n = h.n();
    all_maps(n, t.k()).any(|m| (0..n).all(|v| ((v + 1)..n).all(|w| t.colors(m[v], m[w]).contains(&h.get(v, w)))))
}

pub fn brute_embeds_digraph(h: &Digraph, t: &TypeGraph) -> bool {
    let n = h.n();
    all_maps(n, t.k()).any(|m| {
        let cross_ok = (0..n)
            .all(|v| (0..n).all(|w| v == w || m[v] == m[w] || t.colors(m[v], m[w]).contains(&h.arrow(v, w).color())));
        cross_ok
            && (0..t.k()).all(|u| {
                let fiber: Vec<usize> = (0..n).filter(|&v| m[v] == u).collect();
                let own = t.colors(u, u);
                let has = |a: Arrow| own.contains(&a.color());
                let arrows = usize::from(has(Arrow::Fwd)) + usize::from(has(Arrow::Back));
                let pairs_ok = fiber.iter().tuple_combinations().all(|(&x, &y)| match h.arrow(x, y) {
                    Arrow::None => has(Arrow::None),
                    Arrow::Bi => has(Arrow::Bi),
                    Arrow::Fwd | Arrow::Back => arrows > 0,
                });
                pairs_ok && (arrows != 1 || transitive_subdigraph(h, &fiber))
            })
    })
}

/// Induced copy of `h` in `g` by trying all injective maps.
pub fn has_induced_copy<G: EdgeColoring>(g: &G, h: &G) -> bool {
    (0..g.vertex_count()).permutations(h.vertex_count()).any(|m| {
        (0..h.vertex_count()).all(|a| (0..h.vertex_count()).all(|b| a == b || g.color(m[a], m[b]) == h.color(a, b)))
    })
}

/// Distance to "no induced member" by trying every recoloring of an r-graph.
pub fn brute_distance_colored(g: &ColoredGraph, family: &[ColoredGraph]) -> Option<usize> {
    let n = g.n();
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    pairs
        .iter()
        .map(|_| 1..=g.r())
        .multi_cartesian_product()
        .filter_map(|colors| {
            let h = ColoredGraph::new(
                n,
                g.r(),
                &pairs.iter().zip(&colors).map(|(&(u, v), &c)| (u, v, c)).collect::<Vec<_>>(),
            )
            .unwrap();
            (!family.iter().any(|f| has_induced_copy(&h, f)))
                .then(|| pairs.iter().zip(&colors).filter(|(&(u, v), &c)| g.get(u, v) != c).count())
        })
        .min()
}

/// Same for digraphs whose pairs take states from `allowed`.
pub fn brute_distance_digraph(g: &Digraph, family: &[Digraph], allowed: &[Arrow]) -> Option<usize> {
    let n = g.n();
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    pairs
        .iter()
        .map(|_| allowed.iter().copied())
        .multi_cartesian_product()
        .filter_map(|states| {
            let h =
                Digraph::new(n, &pairs.iter().zip(&states).map(|(&(u, v), &s)| (u, v, s)).collect::<Vec<_>>()).unwrap();
            (!family.iter().any(|f| has_induced_copy(&h, f)))
                .then(|| pairs.iter().zip(&states).filter(|(&(u, v), &s)| g.pair_state(u, v) != s).count())
        })
        .min()
}

/// Tuples of `V_1 × … × V_k` inducing `h` with `w_i` as `v_i`.
pub fn naive_copies<G: EdgeColoring>(g: &G, h: &G, parts: &[Vec<usize>]) -> u64 {
    parts
        .iter()
        .map(|p| p.iter().copied())
        .multi_cartesian_product()
        .filter(|w| (0..w.len()).all(|i| (0..w.len()).all(|j| i == j || g.color(w[i], w[j]) == h.color(i, j))))
        .count() as u64
}

/// Index from scratch: `(1/k²) Σ_ρ Σ_{i<j} d_ρ²`.
pub fn naive_index<G: EdgeColoring>(g: &G, blocks: &[Vec<usize>]) -> f64 {
    let k = blocks.len();
    let mut total = 0.0;
    for i in 0..k {
        for j in (i + 1)..k {
            total += densities(g, &blocks[i], &blocks[j]).iter().map(|d| d * d).sum::<f64>();
        }
    }
    total / (k * k) as f64
}

fn random_label(rng: &mut ChaCha8Rng, universe: u8) -> u8 {
    loop {
        let m = rng.random_range(1..=universe);
        if m & !universe == 0 {
            return m;
        }
    }
}

/// A valid type with labels drawn uniformly until validation passes.
pub fn random_type(rng: &mut ChaCha8Rng, kind: TypeKind, k: usize) -> TypeGraph {
    loop {
        let mut labels = vec![0u8; k * k];
        for x in 0..k {
            for y in x..k {
                let m = random_label(rng, kind.universe());
                labels[x * k + y] = m;
                labels[y * k + x] = if let TypeKind::DirType { .. } = kind { reverse(m) } else { m };
            }
        }
        if let Ok(t) = TypeGraph::from_labels(kind, k, labels) {
            return t;
        }
    }
}

fn reverse(m: u8) -> u8 {
    let swap = |a: Arrow, b: Arrow| if m & a.bit() != 0 { b.bit() } else { 0 };
    (m & (Arrow::None.bit() | Arrow::Bi.bit())) | swap(Arrow::Fwd, Arrow::Back) | swap(Arrow::Back, Arrow::Fwd)
}
