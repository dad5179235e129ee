//! Density vectors, γ-regularity certificates, the partition index and the
//! defect Cauchy–Schwarz checks.

mod cauchy_schwarz;
mod regularity;

pub use cauchy_schwarz::{corollary_cs_check, defect_cs_check, CorollaryReport, DefectCsReport};
pub use regularity::{
    irregularity_witness_heuristic, is_regular_exact, is_regular_exact_capped, min_subset_size, RegularityReport,
    Verdict, Witness, EXACT_CAP,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeColoring, Equipartition};

/// Per-color densities of an ordered pair of disjoint vertex sets, indexed
/// by color number starting at 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DensityVector(Vec<f64>);

impl DensityVector {
    pub fn from_counts(counts: &[u64], pairs: u64) -> Self {
        DensityVector(counts.iter().map(|&c| c as f64 / pairs as f64).collect())
    }

    /// Density of `color` (1-based).
    pub fn get(&self, color: usize) -> f64 {
        self.0[color - 1]
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// `‖self − other‖∞` and the first color attaining it.
    pub fn sup_distance(&self, other: &DensityVector) -> (f64, usize) {
        let mut best = (0.0, 1);
        for (i, (x, y)) in self.0.iter().zip(&other.0).enumerate() {
            let d = (x - y).abs();
            if d > best.0 {
                best = (d, i + 1);
            }
        }
        best
    }
}

/// Rejects empty, out-of-range or overlapping vertex sets.
pub(crate) fn check_disjoint(n: usize, a: &[usize], b: &[usize]) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut mark = vec![0u8; n];
    for (tag, set) in [(1u8, a), (2u8, b)] {
        for &v in set {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if mark[v] != 0 {
                return Err(if mark[v] == tag {
                    Error::BadPartition(format!("vertex {v} repeated in one set"))
                } else {
                    Error::OverlappingSets
                });
            }
            mark[v] = tag;
        }
    }
    Ok(())
}

/// `e_ρ(A, B)` for every color, counting ordered colors `c(a, b)`.
pub(crate) fn color_counts<G: EdgeColoring + ?Sized>(g: &G, a: &[usize], b: &[usize]) -> Vec<u64> {
    let mut counts = vec![0u64; g.color_count()];
    for &x in a {
        for &y in b {
            counts[g.color(x, y) - 1] += 1;
        }
    }
    counts
}

/// Density vector `d(A, B)`; for digraphs the entries are read from `A` to `B`.
pub fn density_vector<G: EdgeColoring + ?Sized>(g: &G, a: &[usize], b: &[usize]) -> Result<DensityVector> {
    check_disjoint(g.vertex_count(), a, b)?;
    Ok(DensityVector::from_counts(&color_counts(g, a, b), (a.len() * b.len()) as u64))
}

/// Color counts between every ordered pair of blocks of a partition,
/// gathered in one pass over the vertex pairs.
#[derive(Clone, Debug)]
pub struct BlockDensities {
    k: usize,
    r: usize,
    sizes: Vec<usize>,
    counts: Vec<u64>,
}

impl BlockDensities {
    pub fn new<G: EdgeColoring + ?Sized>(g: &G, p: &Equipartition) -> Result<Self> {
        if p.n() != g.vertex_count() {
            return Err(Error::BadPartition(format!(
                "partition covers {} vertices, graph has {}",
                p.n(),
                g.vertex_count()
            )));
        }
        let (k, r) = (p.order(), g.color_count());
        let owner = p.block_of();
        let mut counts = vec![0u64; k * k * r];
        let n = g.vertex_count();
        for v in 0..n {
            for w in (v + 1)..n {
                let (i, j) = (owner[v], owner[w]);
                if i != j {
                    counts[(i * k + j) * r + g.color(v, w) - 1] += 1;
                    counts[(j * k + i) * r + g.color(w, v) - 1] += 1;
                }
            }
        }
        let sizes = p.blocks().iter().map(Vec::len).collect();
        Ok(BlockDensities { k, r, sizes, counts })
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn color_count(&self) -> usize {
        self.r
    }

    /// `d_ρ(V_i, V_j)` for `i != j`, color 1-based.
    pub fn density(&self, i: usize, j: usize, color: usize) -> f64 {
        self.counts[(i * self.k + j) * self.r + color - 1] as f64 / (self.sizes[i] * self.sizes[j]) as f64
    }

    pub fn vector(&self, i: usize, j: usize) -> DensityVector {
        let start = (i * self.k + j) * self.r;
        DensityVector::from_counts(&self.counts[start..start + self.r], (self.sizes[i] * self.sizes[j]) as u64)
    }

    /// `(1/k²) Σ_ρ Σ_{i<i'} d_ρ²(V_i, V_i')`.
    pub fn index(&self) -> f64 {
        let mut total = 0.0;
        for i in 0..self.k {
            for j in (i + 1)..self.k {
                total += self.vector(i, j).entries().iter().map(|d| d * d).sum::<f64>();
            }
        }
        total / (self.k * self.k) as f64
    }
}

/// Index of a partition with at least two blocks. For digraphs the inner sum
/// runs over all four states.
pub fn index<G: EdgeColoring + ?Sized>(g: &G, p: &Equipartition) -> Result<f64> {
    if p.order() < 2 {
        return Err(Error::BadPartition("the index needs at least two blocks".into()));
    }
    Ok(BlockDensities::new(g, p)?.index())
}
