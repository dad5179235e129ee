use rayon::prelude::*;
use serde::Serialize;

use super::{check_disjoint, color_counts, DensityVector};
use crate::error::{Error, Result};
use crate::graph::EdgeColoring;
use crate::TOL;

/// Largest side the exhaustive checker accepts by default.
pub const EXACT_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Regular,
    Irregular,
    Unknown,
}

/// Subsets `A' ⊆ A`, `B' ⊆ B` whose density vector is far from `d(A, B)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub a_prime: Vec<usize>,
    pub b_prime: Vec<usize>,
    /// 1-based color attaining the deviation.
    pub color: usize,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularityReport {
    pub gamma: f64,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl RegularityReport {
    fn regular(gamma: f64) -> Self {
        RegularityReport { gamma, verdict: Verdict::Regular, witness: None }
    }

    pub fn is_irregular(&self) -> bool {
        self.verdict == Verdict::Irregular
    }
}

/// Smallest subset size `t` with `t ≥ γ·total`, compared as reals.
pub fn min_subset_size(total: usize, gamma: f64) -> usize {
    let bound = gamma * total as f64;
    let mut t = bound.ceil().max(1.0) as usize;
    while t > 1 && (t - 1) as f64 >= bound {
        t -= 1;
    }
    while (t as f64) < bound {
        t += 1;
    }
    t
}

/// Decides γ-regularity of `(A, B)` by enumerating every qualifying pair of
/// subsets. Sides larger than [`EXACT_CAP`] are rejected.
pub fn is_regular_exact<G: EdgeColoring + ?Sized>(
    g: &G,
    a: &[usize],
    b: &[usize],
    gamma: f64,
) -> Result<RegularityReport> {
    is_regular_exact_capped(g, a, b, gamma, EXACT_CAP)
}

pub fn is_regular_exact_capped<G: EdgeColoring + ?Sized>(
    g: &G,
    a: &[usize],
    b: &[usize],
    gamma: f64,
    cap: usize,
) -> Result<RegularityReport> {
    check_disjoint(g.vertex_count(), a, b)?;
    check_gamma(gamma)?;
    if gamma >= 1.0 {
        // every deviation is at most 1
        return Ok(RegularityReport::regular(gamma));
    }
    let cap = cap.min(20);
    for side in [a.len(), b.len()] {
        if side > cap {
            return Err(Error::TooLargeForExhaustive { size: side, cap });
        }
    }

    let (na, nb, r) = (a.len(), b.len(), g.color_count());
    let col: Vec<u8> = a.iter().flat_map(|&x| b.iter().map(move |&y| (g.color(x, y) - 1) as u8)).collect();
    let base = DensityVector::from_counts(&color_counts(g, a, b), (na * nb) as u64);
    let (ta, tb) = (min_subset_size(na, gamma), min_subset_size(nb, gamma));

    let masks_a: Vec<u32> = (1u32..1 << na).filter(|m| m.count_ones() as usize >= ta).collect();
    let best = masks_a
        .par_iter()
        .map_init(
            || (vec![0u16; nb * r], vec![0u16; (1usize << nb) * r]),
            |(per_b, sums), &ma| {
                per_b.iter_mut().for_each(|c| *c = 0);
                for i in (0..na).filter(|i| ma >> i & 1 == 1) {
                    for j in 0..nb {
                        per_b[j * r + col[i * nb + j] as usize] += 1;
                    }
                }
                let sa = ma.count_ones() as f64;
                let mut best = Candidate::none();
                sums[..r].iter_mut().for_each(|c| *c = 0);
                for mb in 1usize..1 << nb {
                    let low = mb.trailing_zeros() as usize;
                    let prev = mb & (mb - 1);
                    for rho in 0..r {
                        sums[mb * r + rho] = sums[prev * r + rho] + per_b[low * r + rho];
                    }
                    let sb = mb.count_ones() as usize;
                    if sb < tb {
                        continue;
                    }
                    let size = sa * sb as f64;
                    for rho in 0..r {
                        let dev = (sums[mb * r + rho] as f64 / size - base.entries()[rho]).abs();
                        let cand = Candidate { deviation: dev, color: rho + 1, ma, mb: mb as u32 };
                        if cand.beats(&best) {
                            best = cand;
                        }
                    }
                }
                best
            },
        )
        .reduce(Candidate::none, |x, y| if y.beats(&x) { y } else { x });

    if best.deviation > gamma + TOL {
        let pick = |set: &[usize], mask: u32| {
            set.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect()
        };
        Ok(RegularityReport {
            gamma,
            verdict: Verdict::Irregular,
            witness: Some(Witness {
                a_prime: pick(a, best.ma),
                b_prime: pick(b, best.mb),
                color: best.color,
                deviation: best.deviation,
            }),
        })
    } else {
        Ok(RegularityReport::regular(gamma))
    }
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    deviation: f64,
    color: usize,
    ma: u32,
    mb: u32,
}

impl Candidate {
    fn none() -> Self {
        Candidate { deviation: -1.0, color: 0, ma: u32::MAX, mb: u32::MAX }
    }

    /// Larger deviation wins; ties go to the smaller masks so the parallel
    /// reduction is schedule-independent.
    fn beats(&self, other: &Candidate) -> bool {
        if self.deviation != other.deviation {
            return self.deviation > other.deviation;
        }
        (self.ma, self.mb, self.color) < (other.ma, other.mb, other.color)
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(Error::BadPartition(format!("gamma = {gamma} must be positive")))
    }
}

/// Searches for an irregularity witness by degree extremes.
///
/// For each color and each tail, `A'` starts as the `⌈γ|A|⌉` vertices of `A`
/// with the most (or fewest) color-ρ edges into `B`; `B'` is then chosen the
/// same way against `A'`, and the two sides alternate for two rounds. Returns
/// `Irregular` with a verified witness or `Unknown`, never `Regular`.
pub fn irregularity_witness_heuristic<G: EdgeColoring + ?Sized>(
    g: &G,
    a: &[usize],
    b: &[usize],
    gamma: f64,
) -> Result<RegularityReport> {
    check_disjoint(g.vertex_count(), a, b)?;
    check_gamma(gamma)?;
    let r = g.color_count();
    let base = DensityVector::from_counts(&color_counts(g, a, b), (a.len() * b.len()) as u64);
    let (ta, tb) = (min_subset_size(a.len(), gamma), min_subset_size(b.len(), gamma));
    if ta > a.len() || tb > b.len() {
        return Ok(RegularityReport { gamma, verdict: Verdict::Unknown, witness: None });
    }

    let mut best: Option<Witness> = None;
    let mut consider = |ap: &[usize], bp: &[usize]| {
        let d = DensityVector::from_counts(&color_counts(g, ap, bp), (ap.len() * bp.len()) as u64);
        let (deviation, color) = d.sup_distance(&base);
        if best.as_ref().is_none_or(|w| deviation > w.deviation) {
            best = Some(Witness { a_prime: sorted(ap), b_prime: sorted(bp), color, deviation });
        }
    };

    for color in 1..=r {
        for high in [true, false] {
            let mut ap = extreme(a, ta, high, |x| b.iter().filter(|&&y| g.color(x, y) == color).count());
            let mut bp;
            for _ in 0..2 {
                bp = extreme(b, tb, high, |y| ap.iter().filter(|&&x| g.color(x, y) == color).count());
                consider(&ap, &bp);
                ap = extreme(a, ta, high, |x| bp.iter().filter(|&&y| g.color(x, y) == color).count());
                consider(&ap, &bp);
            }
        }
    }

    match best {
        Some(w) if w.deviation > gamma + TOL => {
            Ok(RegularityReport { gamma, verdict: Verdict::Irregular, witness: Some(w) })
        }
        _ => Ok(RegularityReport { gamma, verdict: Verdict::Unknown, witness: None }),
    }
}

fn extreme(set: &[usize], t: usize, high: bool, score: impl Fn(usize) -> usize) -> Vec<usize> {
    let mut scored: Vec<(usize, usize)> = set.iter().map(|&v| (score(v), v)).collect();
    if high {
        scored.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    } else {
        scored.sort();
    }
    scored.into_iter().take(t).map(|(_, v)| v).collect()
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}
