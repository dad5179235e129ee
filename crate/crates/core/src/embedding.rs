//! Embedding-lemma constants and induced-copy counting over block tuples.
//!
//! For a pattern `H` on `v_1..v_k` and disjoint parts `V_1..V_k`, a tuple
//! `(w_1..w_k) ∈ V_1 × … × V_k` is a copy when every pair `(w_i, w_i')` has
//! the color of `(v_i, v_i')`. The lemma promises at least `δ ∏|V_i|` copies
//! when all pairs are γ-regular with density at least `η` in the colors `H`
//! asks for.

use rayon::prelude::*;
use serde::Serialize;

use crate::density::{
    check_disjoint, density_vector, irregularity_witness_heuristic, is_regular_exact, Verdict, EXACT_CAP,
};
use crate::error::{Error, Result};
use crate::graph::EdgeColoring;
use crate::TOL;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EmbeddingConstants {
    pub eta: f64,
    pub k: usize,
    pub gamma: f64,
    pub delta: f64,
}

/// `γ(η, k) = min{(η/2)^{k−1}, (1/6)^{k−1}}`.
pub fn embed_gamma(eta: f64, k: usize) -> f64 {
    let e = k.saturating_sub(1) as i32;
    (eta / 2.0).powi(e).min((1.0 / 6.0f64).powi(e))
}

/// `δ(η, 1) = 1`, `δ(η, k) = δ(η−γ, k−1)·(η−γ)^{k−1}·(1−(k−1)γ)` with
/// `γ = γ(η, k)` recomputed at every level.
pub fn embed_delta(eta: f64, k: usize) -> f64 {
    let mut delta = 1.0;
    let mut eta = eta;
    for level in (2..=k).rev() {
        let gamma = embed_gamma(eta, level);
        let shrunk = eta - gamma;
        delta *= shrunk.powi(level as i32 - 1) * (1.0 - (level - 1) as f64 * gamma);
        eta = shrunk;
    }
    delta
}

pub fn embedding_constants(eta: f64, k: usize) -> Result<EmbeddingConstants> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::BadEta(eta));
    }
    if k == 0 {
        return Err(Error::ArityMismatch { pattern: 0, parts: 0 });
    }
    Ok(EmbeddingConstants { eta, k, gamma: embed_gamma(eta, k), delta: embed_delta(eta, k) })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CopyCount {
    pub count: u64,
    /// `∏ |V_i|`.
    pub total: u64,
    /// `δ ∏ |V_i|`.
    pub bound: f64,
    pub satisfied: bool,
}

/// Number of tuples in `V_1 × … × V_k` spanning a copy of `h` with `w_i`
/// playing `v_i`. Digraphs compare ordered states.
pub fn count_copies<G: EdgeColoring>(g: &G, h: &G, parts: &[Vec<usize>]) -> Result<u64> {
    check_parts(g, h, parts)?;
    let k = parts.len();
    if k == 1 {
        return Ok(parts[0].len() as u64);
    }
    Ok(parts[0]
        .par_iter()
        .map(|&w| {
            let mut chosen = Vec::with_capacity(k);
            chosen.push(w);
            extend(g, h, parts, &mut chosen)
        })
        .sum())
}

fn extend<G: EdgeColoring>(g: &G, h: &G, parts: &[Vec<usize>], chosen: &mut Vec<usize>) -> u64 {
    let depth = chosen.len();
    let fits = |w: usize, chosen: &[usize]| chosen.iter().enumerate().all(|(i, &x)| g.color(x, w) == h.color(i, depth));
    if depth + 1 == parts.len() {
        return parts[depth].iter().filter(|&&w| fits(w, chosen)).count() as u64;
    }
    let mut total = 0;
    for &w in &parts[depth] {
        if fits(w, chosen) {
            chosen.push(w);
            total += extend(g, h, parts, chosen);
            chosen.pop();
        }
    }
    total
}

/// Copy count together with the lemma's lower bound `δ(η, k) ∏|V_i|`.
pub fn count_spanning_copies<G: EdgeColoring>(g: &G, h: &G, parts: &[Vec<usize>], eta: f64) -> Result<CopyCount> {
    let constants = embedding_constants(eta, parts.len().max(1))?;
    let count = count_copies(g, h, parts)?;
    let total: u64 = parts.iter().map(|p| p.len() as u64).product();
    let bound = constants.delta * total as f64;
    Ok(CopyCount { count, total, bound, satisfied: count as f64 >= bound })
}

fn check_parts<G: EdgeColoring>(g: &G, h: &G, parts: &[Vec<usize>]) -> Result<()> {
    if h.vertex_count() != parts.len() || parts.is_empty() {
        return Err(Error::ArityMismatch { pattern: h.vertex_count(), parts: parts.len() });
    }
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    for &v in parts.iter().flatten() {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::OverlappingSets);
        }
    }
    Ok(())
}

/// Vertices of `V_k` with fewer than `(η−γ)|V_i|` color-`rho` edges into `V_i`.
pub fn bad_vertices<G: EdgeColoring + ?Sized>(
    g: &G,
    v_k: &[usize],
    v_i: &[usize],
    rho: usize,
    eta: f64,
    gamma: f64,
) -> Result<Vec<usize>> {
    check_disjoint(g.vertex_count(), v_k, v_i)?;
    let threshold = (eta - gamma) * v_i.len() as f64;
    Ok(v_k
        .iter()
        .copied()
        .filter(|&w| (v_i.iter().filter(|&&x| g.color(w, x) == rho).count() as f64) < threshold)
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairPremise {
    pub i: usize,
    pub j: usize,
    /// Color `H` requires on `(v_i, v_j)`.
    pub color: usize,
    pub density: f64,
    pub density_ok: bool,
    /// γ-regularity of `(V_i, V_j)`: exact when both sides are small,
    /// otherwise heuristic (`unknown` unless a witness is found).
    pub regularity: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmbeddingReport {
    pub constants: EmbeddingConstants,
    pub pairs: Vec<PairPremise>,
    /// All densities reach `η` and no pair was shown irregular.
    pub premises_hold: bool,
    pub copies: CopyCount,
    /// The density premise is applied to the color of every pair of `H`.
    pub color_quantifier: &'static str,
}

/// Checks the premises of the embedding lemma on `parts` and counts copies.
/// Violations are reported rather than returned as errors.
pub fn check_embedding_lemma<G: EdgeColoring>(g: &G, h: &G, parts: &[Vec<usize>], eta: f64) -> Result<EmbeddingReport> {
    let constants = embedding_constants(eta, parts.len().max(1))?;
    check_parts(g, h, parts)?;
    let k = parts.len();
    let mut pairs = Vec::with_capacity(k * k.saturating_sub(1) / 2);
    for i in 0..k {
        for j in (i + 1)..k {
            let (a, b) = (&parts[i], &parts[j]);
            if a.is_empty() || b.is_empty() {
                return Err(Error::EmptySet);
            }
            let color = h.color(i, j);
            let density = density_vector(g, a, b)?.get(color);
            let regularity = if a.len() <= EXACT_CAP && b.len() <= EXACT_CAP {
                is_regular_exact(g, a, b, constants.gamma)?.verdict
            } else {
                irregularity_witness_heuristic(g, a, b, constants.gamma)?.verdict
            };
            pairs.push(PairPremise { i, j, color, density, density_ok: density >= eta - TOL, regularity });
        }
    }
    let premises_hold = pairs.iter().all(|p| p.density_ok && p.regularity != Verdict::Irregular);
    let copies = count_spanning_copies(g, h, parts, eta)?;
    Ok(EmbeddingReport {
        constants,
        pairs,
        premises_hold,
        copies,
        color_quantifier: "every color 1..=r used by a pair of the pattern",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ColoredGraph;

    #[test]
    fn single_vertex_constants() {
        for eta in [0.1, 0.5, 0.9] {
            let c = embedding_constants(eta, 1).unwrap();
            assert_eq!((c.gamma, c.delta), (1.0, 1.0));
        }
    }

    #[test]
    fn gamma_at_half_two() {
        assert!((embed_gamma(0.5, 2) - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn delta_unrolled_by_hand() {
        let c = embedding_constants(0.2, 3).unwrap();
        assert!((c.gamma - 0.01).abs() < 1e-15);
        let gamma2 = (0.19f64 / 2.0).min(1.0 / 6.0);
        assert!((gamma2 - 0.095).abs() < 1e-15);
        let delta2 = (0.19 - gamma2) * (1.0 - gamma2);
        let expected = delta2 * 0.19 * 0.19 * (1.0 - 2.0 * 0.01);
        assert!((c.delta - expected).abs() < 1e-15, "{} vs {}", c.delta, expected);
        assert!((embed_delta(0.19, 2) - 0.095 * 0.905).abs() < 1e-15);
    }

    #[test]
    fn bad_eta() {
        assert!(matches!(embedding_constants(0.0, 2), Err(Error::BadEta(_))));
        assert!(matches!(embedding_constants(1.0, 2), Err(Error::BadEta(_))));
    }

    #[test]
    fn monochromatic_counts() {
        let g = ColoredGraph::monochromatic(9, 2, 1).unwrap();
        let h = ColoredGraph::monochromatic(3, 2, 1).unwrap();
        let parts = vec![vec![0, 1], vec![2, 3, 4], vec![5, 6, 7, 8]];
        assert_eq!(count_copies(&g, &h, &parts).unwrap(), 24);
        let h2 = ColoredGraph::new(3, 2, &[(0, 1, 1), (0, 2, 2), (1, 2, 1)]).unwrap();
        assert_eq!(count_copies(&g, &h2, &parts).unwrap(), 0);
        let single = ColoredGraph::monochromatic(1, 2, 1).unwrap();
        assert_eq!(count_copies(&g, &single, &[vec![3, 4, 5]]).unwrap(), 3);
    }

    #[test]
    fn arity_and_overlap() {
        let g = ColoredGraph::monochromatic(6, 2, 1).unwrap();
        let h = ColoredGraph::monochromatic(3, 2, 1).unwrap();
        assert!(matches!(count_copies(&g, &h, &[vec![0], vec![1]]), Err(Error::ArityMismatch { .. })));
        assert!(matches!(count_copies(&g, &h, &[vec![0], vec![1], vec![1]]), Err(Error::OverlappingSets)));
    }

    #[test]
    fn bad_vertex_examples() {
        let g = ColoredGraph::monochromatic(10, 2, 1).unwrap();
        let (vk, vi): (Vec<usize>, Vec<usize>) = ((0..4).collect(), (4..10).collect());
        assert!(bad_vertices(&g, &vk, &vi, 1, 0.5, 0.1).unwrap().is_empty());
        assert_eq!(bad_vertices(&g, &vk, &vi, 2, 0.5, 0.1).unwrap(), vk);

        // V_k = 0..10, V_i = 10..30; vertices 2, 5, 7 see no color 1 at all
        let planted = ColoredGraph::from_fn(30, 2, |u, v| {
            let (x, y) = (u.min(v), u.max(v));
            if x < 10 && y >= 10 && [2, 5, 7].contains(&x) {
                2
            } else {
                1
            }
        })
        .unwrap();
        let (vk, vi): (Vec<usize>, Vec<usize>) = ((0..10).collect(), (10..30).collect());
        assert_eq!(bad_vertices(&planted, &vk, &vi, 1, 0.2, 0.1).unwrap(), vec![2, 5, 7]);
    }

    #[test]
    fn lemma_report_on_clean_instance() {
        let g = ColoredGraph::monochromatic(9, 2, 1).unwrap();
        let h = ColoredGraph::monochromatic(3, 2, 1).unwrap();
        let parts = vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]];
        let report = check_embedding_lemma(&g, &h, &parts, 0.5).unwrap();
        assert!(report.premises_hold);
        assert!(report.pairs.iter().all(|p| p.regularity == Verdict::Regular));
        assert_eq!(report.copies.count, 27);
        assert!(report.copies.satisfied);
    }
}
