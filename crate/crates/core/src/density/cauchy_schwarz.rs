use serde::Serialize;

use super::{check_disjoint, color_counts};
use crate::error::{Error, Result};
use crate::graph::EdgeColoring;
use crate::TOL;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DefectCsReport {
    pub alpha: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Evaluates both sides of the defect Cauchy–Schwarz inequality
/// `Σ X_k² ≥ (Σ X_k)²/n + α²n/(m(n−m))`, where
/// `α = Σ_{k≤m} X_k − (m/n) Σ X_k`.
pub fn defect_cs_check(xs: &[f64], m: usize) -> Result<DefectCsReport> {
    let n = xs.len();
    if m < 1 || m >= n {
        return Err(Error::BadM { m, len: n });
    }
    if xs.iter().any(|&x| x.is_nan() || x < 0.0) {
        return Err(Error::NegativeValue);
    }
    let total: f64 = xs.iter().sum();
    let head: f64 = xs[..m].iter().sum();
    let (nf, mf) = (n as f64, m as f64);
    let alpha = head - mf / nf * total;
    let lhs: f64 = xs.iter().map(|x| x * x).sum();
    let rhs = total * total / nf + alpha * alpha * nf / (mf * (nf - mf));
    Ok(DefectCsReport { alpha, lhs, rhs, holds: lhs >= rhs - TOL })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorollaryReport {
    /// Sub-pairs `(j, j')` with `|d_ρ(A,B) − d_ρ(A_j,B_j')| ≥ ε/2`.
    pub premise_count: usize,
    /// Whether `premise_count ≥ εℓ²`.
    pub premise_holds: bool,
    /// `Σ d_ρ²(A_j, B_j')`.
    pub lhs: f64,
    /// `ℓ²(d_ρ²(A,B) + ε³/8)`.
    pub rhs: f64,
    pub conclusion_holds: bool,
    /// `Σ d_ρ(A_j, B_j')`, equal to `ℓ² d_ρ(A,B)` for equal sub-blocks.
    pub density_sum: f64,
    pub parent_density: f64,
}

/// Evaluates the premise and conclusion of the index-gain corollary for
/// color `rho` (1-based) on equal-size partitions of `A` and `B`.
pub fn corollary_cs_check<G: EdgeColoring + ?Sized>(
    g: &G,
    a: &[usize],
    b: &[usize],
    a_parts: &[Vec<usize>],
    b_parts: &[Vec<usize>],
    rho: usize,
    eps: f64,
) -> Result<CorollaryReport> {
    check_disjoint(g.vertex_count(), a, b)?;
    if rho == 0 || rho > g.color_count() {
        return Err(Error::ColorOutOfRange { color: rho, r: g.color_count() });
    }
    let l = a_parts.len();
    if l == 0 || b_parts.len() != l {
        return Err(Error::UnequalSubBlocks(format!("{} parts of A, {} parts of B", l, b_parts.len())));
    }
    check_equal_split(a, a_parts)?;
    check_equal_split(b, b_parts)?;

    let density = |x: &[usize], y: &[usize]| color_counts(g, x, y)[rho - 1] as f64 / (x.len() * y.len()) as f64;
    let parent = density(a, b);
    let mut premise_count = 0;
    let (mut lhs, mut density_sum) = (0.0, 0.0);
    for aj in a_parts {
        for bj in b_parts {
            let d = density(aj, bj);
            if (parent - d).abs() >= eps / 2.0 - TOL {
                premise_count += 1;
            }
            lhs += d * d;
            density_sum += d;
        }
    }
    let l2 = (l * l) as f64;
    let rhs = l2 * (parent * parent + eps.powi(3) / 8.0);
    Ok(CorollaryReport {
        premise_count,
        premise_holds: premise_count as f64 >= eps * l2,
        lhs,
        rhs,
        conclusion_holds: lhs > rhs,
        density_sum,
        parent_density: parent,
    })
}

fn check_equal_split(set: &[usize], parts: &[Vec<usize>]) -> Result<()> {
    let size = parts[0].len();
    if size == 0 || parts.iter().any(|p| p.len() != size) {
        return Err(Error::UnequalSubBlocks("sub-blocks differ in size".into()));
    }
    let mut whole: Vec<usize> = set.to_vec();
    let mut union: Vec<usize> = parts.iter().flatten().copied().collect();
    whole.sort_unstable();
    union.sort_unstable();
    if whole != union {
        return Err(Error::UnequalSubBlocks("sub-blocks do not partition the set".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ColoredGraph;

    #[test]
    fn constant_sequence_is_tight() {
        let r = defect_cs_check(&[1.0, 1.0, 1.0, 1.0], 2).unwrap();
        assert_eq!((r.alpha, r.lhs, r.rhs), (0.0, 4.0, 4.0));
        assert!(r.holds);
    }

    #[test]
    fn two_point_equality() {
        let r = defect_cs_check(&[2.0, 0.0], 1).unwrap();
        assert_eq!((r.alpha, r.lhs, r.rhs), (1.0, 4.0, 4.0));
        assert!(r.holds);
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(defect_cs_check(&[1.0, 2.0], 2), Err(Error::BadM { m: 2, len: 2 })));
        assert!(matches!(defect_cs_check(&[1.0, 2.0], 0), Err(Error::BadM { .. })));
        assert!(matches!(defect_cs_check(&[1.0, -2.0], 1), Err(Error::NegativeValue)));
    }

    /// `A = 0..20`, `B = 20..40`, split into halves. Sub-pairs `(A_0,B_0)` and
    /// `(A_1,B_1)` get color-1 density 0.7, the two others 0.3.
    type Planted = (ColoredGraph, Vec<usize>, Vec<usize>, Vec<Vec<usize>>, Vec<Vec<usize>>);

    fn planted() -> Planted {
        let g = ColoredGraph::from_fn(40, 2, |u, v| {
            let (x, y) = (u.min(v), u.max(v));
            if y < 20 || x >= 20 {
                return 2;
            }
            let (i, j) = (x, y - 20);
            let cell = (i % 10) * 10 + (j % 10);
            let dense = (i < 10) == (j < 10);
            let cut = if dense { 70 } else { 30 };
            if cell < cut {
                1
            } else {
                2
            }
        })
        .unwrap();
        let a: Vec<usize> = (0..20).collect();
        let b: Vec<usize> = (20..40).collect();
        let ap = vec![(0..10).collect(), (10..20).collect()];
        let bp = vec![(20..30).collect(), (30..40).collect()];
        (g, a, b, ap, bp)
    }

    #[test]
    fn planted_corollary_instance() {
        let (g, a, b, ap, bp) = planted();
        let r = corollary_cs_check(&g, &a, &b, &ap, &bp, 1, 0.2).unwrap();
        assert_eq!(r.premise_count, 4);
        assert!(r.premise_holds);
        assert!((r.parent_density - 0.5).abs() < 1e-12);
        assert!((r.lhs - 1.16).abs() < 1e-12);
        assert!((r.rhs - 1.004).abs() < 1e-12);
        assert!(r.conclusion_holds);
        assert!((r.density_sum - 4.0 * r.parent_density).abs() < 1e-12);
    }

    #[test]
    fn monochromatic_has_no_premise() {
        let g = ColoredGraph::monochromatic(8, 2, 1).unwrap();
        let (a, b) = (vec![0, 1, 2, 3], vec![4, 5, 6, 7]);
        let (ap, bp) = (vec![vec![0, 1], vec![2, 3]], vec![vec![4, 5], vec![6, 7]]);
        for eps in [0.01, 0.3, 0.9] {
            assert_eq!(corollary_cs_check(&g, &a, &b, &ap, &bp, 1, eps).unwrap().premise_count, 0);
        }
    }

    #[test]
    fn unequal_sub_blocks_rejected() {
        let g = ColoredGraph::monochromatic(8, 2, 1).unwrap();
        let (a, b) = (vec![0, 1, 2], vec![4, 5, 6, 7]);
        let err = corollary_cs_check(&g, &a, &b, &[vec![0, 1], vec![2]], &[vec![4, 5], vec![6, 7]], 1, 0.1);
        assert!(matches!(err, Err(Error::UnequalSubBlocks(_))));
        let err =
            corollary_cs_check(&g, &[0, 1, 2, 3], &b, &[vec![0, 1], vec![2, 9]], &[vec![4, 5], vec![6, 7]], 1, 0.1);
        assert!(matches!(err, Err(Error::UnequalSubBlocks(_))));
    }
}
