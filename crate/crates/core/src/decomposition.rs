//! The index-increment refinement loop and random subcluster selection.
//!
//! [`decompose`] builds a chain of refining equipartitions `A_1, A_2, …`
//! and stops at the first step whose index gain is at most `rε⁴/64`,
//! returning the last two partitions as `A` and its refinement `B`.
//! Refinements are driven by irregularity witnesses: each block is cut along
//! the Venn cells of the witness subsets that touch it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::density::{
    check_disjoint, density_vector, irregularity_witness_heuristic, is_regular_exact, BlockDensities, RegularityReport,
    Verdict, EXACT_CAP,
};
use crate::error::{Error, Result};
use crate::graph::{equipartition, EdgeColoring, Equipartition};
use crate::TOL;

/// Default bound on the number of blocks of any partition the loop builds.
pub const DEFAULT_ORDER_CAP: usize = 256;

/// Sides up to this size are certified exhaustively by [`Certifier::Auto`].
pub const AUTO_EXACT_SIDE: usize = 6;

/// A nonincreasing function `ℰ: ℕ → (0, 1)`: a rule for every `k`, with
/// optional per-`k` overrides. Monotonicity is enforced by taking the running
/// minimum.
#[derive(Clone, Debug, PartialEq)]
pub struct EFunction {
    rule: Rule,
    table: BTreeMap<usize, f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Rule {
    Constant(f64),
    OverKPlusOne(f64),
}

fn check_unit(v: f64) -> Result<f64> {
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(Error::BadEFunction(format!("value {v} is outside (0, 1)")))
    }
}

impl EFunction {
    pub fn constant(c: f64) -> Result<Self> {
        Ok(EFunction { rule: Rule::Constant(check_unit(c)?), table: BTreeMap::new() })
    }

    /// `ℰ(k) = a/(k+1)`.
    pub fn over_k_plus_one(a: f64) -> Result<Self> {
        Ok(EFunction { rule: Rule::OverKPlusOne(check_unit(a)?), table: BTreeMap::new() })
    }

    pub fn with_value(mut self, k: usize, value: f64) -> Result<Self> {
        self.table.insert(k, check_unit(value)?);
        Ok(self)
    }

    pub fn eval(&self, k: usize) -> f64 {
        let rule = match self.rule {
            Rule::Constant(c) => c,
            Rule::OverKPlusOne(a) => a / (k as f64 + 1.0),
        };
        self.table.range(..=k).map(|(_, &v)| v).fold(rule, f64::min)
    }
}

impl fmt::Display for EFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rule {
            Rule::Constant(c) => write!(f, "{c}")?,
            Rule::OverKPlusOne(a) => write!(f, "{a}/(k+1)")?,
        }
        for (k, v) in &self.table {
            write!(f, ",{k}:{v}")?;
        }
        Ok(())
    }
}

/// Parses `c` or `a/(k+1)`, optionally followed by `,k:v` overrides.
impl FromStr for EFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<EFunction> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut fields = compact.split(',');
        let head = fields.next().unwrap_or_default();
        let number = |t: &str| t.parse::<f64>().map_err(|_| Error::BadEFunction(format!("cannot parse {t:?}")));
        let mut e = match head.strip_suffix("/(k+1)") {
            Some(a) => EFunction::over_k_plus_one(number(a)?)?,
            None => EFunction::constant(number(head)?)?,
        };
        for field in fields {
            let (k, v) =
                field.split_once(':').ok_or_else(|| Error::BadEFunction(format!("override {field:?} is not k:v")))?;
            let k = k.parse().map_err(|_| Error::BadEFunction(format!("bad index {k:?}")))?;
            e = e.with_value(k, number(v)?)?;
        }
        Ok(e)
    }
}

impl Serialize for EFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// How pairs are tested for γ-regularity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Certifier {
    /// Exhaustive search; sides above [`EXACT_CAP`] are an error.
    Exact,
    /// Degree-extreme witness search; never certifies regularity.
    Heuristic,
    /// Exact when both sides have at most [`AUTO_EXACT_SIDE`] vertices.
    #[default]
    Auto,
}

impl Certifier {
    pub fn certify<G: EdgeColoring + ?Sized>(
        self,
        g: &G,
        a: &[usize],
        b: &[usize],
        gamma: f64,
    ) -> Result<RegularityReport> {
        let small = a.len() <= AUTO_EXACT_SIDE && b.len() <= AUTO_EXACT_SIDE;
        match self {
            Certifier::Exact => is_regular_exact(g, a, b, gamma),
            Certifier::Auto if small => is_regular_exact(g, a, b, gamma),
            _ => irregularity_witness_heuristic(g, a, b, gamma),
        }
    }
}

impl FromStr for Certifier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Certifier> {
        match s {
            "exact" => Ok(Certifier::Exact),
            "heuristic" => Ok(Certifier::Heuristic),
            "auto" => Ok(Certifier::Auto),
            _ => Err(Error::BadPartition(format!("unknown certifier {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// At most `ε·C(k,2)` pairs were shown irregular.
    TargetMet,
    /// The last refinement raised the index by at most `rε⁴/64`.
    IndexStalled,
    /// Refining further would exceed the order cap.
    CapReached,
    /// Some block has fewer than two vertices.
    TooFine,
    /// The chain reached `⌊64 r⁻¹ ε⁻⁴⌋ + 1` partitions.
    IterationCap,
}

/// `⌊64 r⁻¹ ε⁻⁴⌋ + 1`.
pub fn iteration_bound(r: usize, eps: f64) -> usize {
    (64.0 / (r as f64 * eps.powi(4))).floor() as usize + 1
}

fn index_of<G: EdgeColoring + ?Sized>(g: &G, p: &Equipartition) -> Result<f64> {
    Ok(BlockDensities::new(g, p)?.index())
}

fn block_pairs(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|i| ((i + 1)..k).map(move |j| (i, j))).collect()
}

fn binom2(k: usize) -> f64 {
    (k * k.saturating_sub(1) / 2) as f64
}

/// Certifies every pair `i < j` of blocks, in lexicographic order.
pub fn certify_pairs<G: EdgeColoring>(
    g: &G,
    p: &Equipartition,
    gamma: f64,
    certifier: Certifier,
) -> Result<Vec<RegularityReport>> {
    block_pairs(p.order()).into_par_iter().map(|(i, j)| certifier.certify(g, p.block(i), p.block(j), gamma)).collect()
}

enum Refinement {
    Refined(Equipartition),
    Blocked(StopReason),
}

/// Splits every block into the same number `ℓ` of parts along the Venn cells
/// of the witness subsets inside it. `ℓ` is the largest cell count, clamped
/// to `[2, min block size]` and to `cap / k`.
/// Splits every block into `ℓ` parts of at least `min_child` vertices.
fn refine_step(p: &Equipartition, reports: &[RegularityReport], cap: usize, min_child: usize) -> Result<Refinement> {
    let k = p.order();
    if p.min_block_size() < 2 * min_child {
        return Ok(Refinement::Blocked(StopReason::TooFine));
    }
    if cap / k < 2 {
        return Ok(Refinement::Blocked(StopReason::CapReached));
    }
    let mut sets: Vec<Vec<&[usize]>> = vec![Vec::new(); k];
    for ((i, j), report) in block_pairs(k).into_iter().zip(reports) {
        if let (Verdict::Irregular, Some(w)) = (report.verdict, &report.witness) {
            sets[i].push(&w.a_prime);
            sets[j].push(&w.b_prime);
        }
    }
    let signature = |i: usize, v: usize| -> Vec<bool> { sets[i].iter().map(|s| s.binary_search(&v).is_ok()).collect() };
    let arranged: Vec<Vec<usize>> = p
        .blocks()
        .iter()
        .enumerate()
        .map(|(i, block)| {
            let mut keyed: Vec<(Vec<bool>, usize)> = block.iter().map(|&v| (signature(i, v), v)).collect();
            keyed.sort();
            keyed.into_iter().map(|(_, v)| v).collect()
        })
        .collect();
    let cells = (0..k)
        .map(|i| {
            let mut sigs: Vec<Vec<bool>> = p.block(i).iter().map(|&v| signature(i, v)).collect();
            sigs.sort();
            sigs.dedup();
            sigs.len()
        })
        .max()
        .unwrap_or(1);
    let l = cells.clamp(2, (p.min_block_size() / min_child).min(cap / k));
    Ok(Refinement::Refined(p.split_each(l, |i, _| arranged[i].clone())?))
}

#[derive(Clone, Debug, Serialize)]
pub struct Regularized {
    pub partition: Equipartition,
    pub eps: f64,
    pub irregular_pairs: usize,
    pub unknown_pairs: usize,
    /// `ε·C(k,2)`.
    pub budget: f64,
    pub index_trace: Vec<f64>,
    pub stop: StopReason,
}

impl Regularized {
    pub fn cap_exceeded(&self) -> bool {
        self.stop == StopReason::CapReached
    }
}

/// Starting from a seeded equipartition of order `m`, refines along
/// irregularity witnesses until at most `ε·C(k,2)` pairs are shown irregular,
/// the index stalls, or the order cap is hit.
pub fn regularize<G: EdgeColoring>(
    g: &G,
    m: usize,
    eps: f64,
    cap: usize,
    certifier: Certifier,
    seed: u64,
) -> Result<Regularized> {
    check_unit(eps).map_err(|_| Error::BadEta(eps))?;
    let start = equipartition(g.vertex_count(), m, seed)?;
    regularize_from(g, start, eps, cap, certifier)
}

pub fn regularize_from<G: EdgeColoring>(
    g: &G,
    start: Equipartition,
    eps: f64,
    cap: usize,
    certifier: Certifier,
) -> Result<Regularized> {
    regularize_inner(g, start, eps, cap, certifier, 1)
}

fn regularize_inner<G: EdgeColoring>(
    g: &G,
    start: Equipartition,
    eps: f64,
    cap: usize,
    certifier: Certifier,
    min_child: usize,
) -> Result<Regularized> {
    let threshold = g.color_count() as f64 * eps.powi(4) / 64.0;
    let mut p = start;
    let mut index_trace = vec![index_of(g, &p)?];
    let mut stalled = false;
    loop {
        let reports = certify_pairs(g, &p, eps, certifier)?;
        let irregular_pairs = reports.iter().filter(|r| r.verdict == Verdict::Irregular).count();
        let unknown_pairs = reports.iter().filter(|r| r.verdict == Verdict::Unknown).count();
        let budget = eps * binom2(p.order());
        let finish = |p: Equipartition, index_trace: Vec<f64>, stop| Regularized {
            partition: p,
            eps,
            irregular_pairs,
            unknown_pairs,
            budget,
            index_trace,
            stop,
        };
        if irregular_pairs as f64 <= budget + TOL {
            return Ok(finish(p, index_trace, StopReason::TargetMet));
        }
        if stalled {
            return Ok(finish(p, index_trace, StopReason::IndexStalled));
        }
        match refine_step(&p, &reports, cap, min_child)? {
            Refinement::Blocked(stop) => return Ok(finish(p, index_trace, stop)),
            Refinement::Refined(next) => {
                let value = index_of(g, &next)?;
                stalled = value - index_trace[index_trace.len() - 1] <= threshold;
                index_trace.push(value);
                p = next;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairStats {
    /// `ℰ(0)`.
    pub eps0: f64,
    /// `ℰ(k)` for `k = |A|`.
    pub eps_k: f64,
    pub a_irregular: usize,
    pub a_unknown: usize,
    /// `ℰ(0)·C(k,2)`.
    pub a_budget: f64,
    /// Certified-irregular cross sub-pairs of `B`, over all pairs `i < i'`.
    pub b_irregular: usize,
    pub b_unknown: usize,
    /// `ℰ(k)·ℓ²`.
    pub b_budget: f64,
    /// Certified-irregular sub-pairs for each `i < i'`, in lexicographic order.
    pub b_irregular_per_pair: Vec<usize>,
    /// For each `i < i'`, the sub-pairs `(j, j')` with
    /// `|d_ρ(V_i,V_i') − d_ρ(V_ij,V_i'j')| ≥ ℰ(0)` for some `ρ`.
    pub deviating_sub_pairs: Vec<usize>,
    /// Pairs `i < i'` with more than `ℰ(0)·ℓ²` deviating sub-pairs.
    pub deviating_pairs: usize,
    pub regular_a_holds: bool,
    pub regular_b_holds: bool,
    pub density_stability_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionResult {
    pub a: Equipartition,
    pub b: Equipartition,
    pub k: usize,
    pub l: usize,
    /// Number of partitions in the chain, so `B = A_iterations`.
    pub iterations: usize,
    pub iteration_bound: usize,
    pub index_trace: Vec<f64>,
    pub stop: StopReason,
    pub e: EFunction,
    pub certifier: Certifier,
    pub pair_stats: PairStats,
}

impl DecompositionResult {
    pub fn cap_exceeded(&self) -> bool {
        self.stop == StopReason::CapReached
    }

    /// `children()[i][j]` is the index in `B` of the `j`-th part of block `i`.
    pub fn children(&self) -> Vec<Vec<usize>> {
        (0..self.k).map(|i| self.b.children_of(i)).collect()
    }
}

pub fn decompose<G: EdgeColoring>(
    g: &G,
    m: usize,
    e: &EFunction,
    cap: usize,
    seed: u64,
) -> Result<DecompositionResult> {
    decompose_with(g, m, e, cap, Certifier::Auto, seed)
}

/// Builds `A_1` with [`regularize`] at `ℰ(0)`, then refines `A_i` along
/// witnesses at `ℰ(|A_i|)` until the index gain is at most `rε⁴/64`. An
/// order `m < 2` is raised to 2.
pub fn decompose_with<G: EdgeColoring>(
    g: &G,
    m: usize,
    e: &EFunction,
    cap: usize,
    certifier: Certifier,
    seed: u64,
) -> Result<DecompositionResult> {
    let n = g.vertex_count();
    let m = m.max(2);
    if n < 2 * m || cap < 2 * m {
        return Err(Error::GraphTooSmall(format!(
            "{n} vertices and order cap {cap} cannot hold two levels of order {m}"
        )));
    }
    let eps = e.eval(0);
    let r = g.color_count();
    let threshold = r as f64 * eps.powi(4) / 64.0;
    let bound = iteration_bound(r, eps);

    // the first level keeps room for the second: half the cap, blocks of two
    check_unit(eps).map_err(|_| Error::BadEta(eps))?;
    let first = regularize_inner(g, equipartition(n, m, seed)?, eps, cap / 2, certifier, 2)?;
    let mut current = first.partition;
    let mut previous: Option<Equipartition> = None;
    let mut index_trace = vec![index_of(g, &current)?];
    let stop = loop {
        let reports = certify_pairs(g, &current, e.eval(current.order()), certifier)?;
        match refine_step(&current, &reports, cap, 1)? {
            Refinement::Blocked(stop) => break stop,
            Refinement::Refined(next) => {
                let value = index_of(g, &next)?;
                let gain = value - index_trace[index_trace.len() - 1];
                index_trace.push(value);
                previous = Some(std::mem::replace(&mut current, next));
                if gain <= threshold {
                    break StopReason::IndexStalled;
                }
                if index_trace.len() >= bound {
                    break StopReason::IterationCap;
                }
            }
        }
    };
    let Some(a) = previous else {
        return Err(Error::GraphTooSmall(format!(
            "the first partition of order {} cannot be refined under cap {cap}",
            current.order()
        )));
    };
    let b = current;
    let (k, l) = (a.order(), b.order() / a.order());
    let pair_stats = pair_stats(g, &a, &b, e, certifier)?;
    Ok(DecompositionResult {
        a,
        b,
        k,
        l,
        iterations: index_trace.len(),
        iteration_bound: bound,
        index_trace,
        stop,
        e: e.clone(),
        certifier,
        pair_stats,
    })
}

/// Regularity and density-stability counts for `A` and its refinement `B`.
/// The deviation counts are exact; the regularity counts are as strong as
/// the certifier.
pub fn pair_stats<G: EdgeColoring>(
    g: &G,
    a: &Equipartition,
    b: &Equipartition,
    e: &EFunction,
    certifier: Certifier,
) -> Result<PairStats> {
    let k = a.order();
    let children: Vec<Vec<usize>> = (0..k).map(|i| b.children_of(i)).collect();
    let l = children[0].len();
    if l == 0 || children.iter().any(|c| c.len() != l) {
        return Err(Error::BadPartition("B does not split every block of A into the same number of parts".into()));
    }
    let (eps0, eps_k) = (e.eval(0), e.eval(k));
    let a_reports = certify_pairs(g, a, eps0, certifier)?;
    let a_irregular = a_reports.iter().filter(|r| r.verdict == Verdict::Irregular).count();
    let a_unknown = a_reports.iter().filter(|r| r.verdict == Verdict::Unknown).count();

    let coarse = BlockDensities::new(g, a)?;
    let fine = BlockDensities::new(g, b)?;
    let per_pair: Vec<(usize, usize, usize)> = block_pairs(k)
        .into_par_iter()
        .map(|(i, i2)| -> Result<(usize, usize, usize)> {
            let parent = coarse.vector(i, i2);
            let (mut irregular, mut unknown, mut deviating) = (0, 0, 0);
            for &x in &children[i] {
                for &y in &children[i2] {
                    match certifier.certify(g, b.block(x), b.block(y), eps_k)?.verdict {
                        Verdict::Irregular => irregular += 1,
                        Verdict::Unknown => unknown += 1,
                        Verdict::Regular => {}
                    }
                    if fine.vector(x, y).sup_distance(&parent).0 >= eps0 - TOL {
                        deviating += 1;
                    }
                }
            }
            Ok((irregular, unknown, deviating))
        })
        .collect::<Result<_>>()?;

    let l2 = (l * l) as f64;
    let b_irregular_per_pair: Vec<usize> = per_pair.iter().map(|p| p.0).collect();
    let deviating_sub_pairs: Vec<usize> = per_pair.iter().map(|p| p.2).collect();
    let b_irregular = b_irregular_per_pair.iter().sum();
    let deviating_pairs = deviating_sub_pairs.iter().filter(|&&c| c as f64 > eps0 * l2).count();
    let a_budget = eps0 * binom2(k);
    let b_budget = eps_k * l2;
    Ok(PairStats {
        eps0,
        eps_k,
        a_irregular,
        a_unknown,
        a_budget,
        b_irregular,
        b_unknown: per_pair.iter().map(|p| p.1).sum(),
        b_budget,
        b_irregular_per_pair,
        deviating_sub_pairs,
        deviating_pairs,
        regular_a_holds: a_irregular as f64 <= a_budget + TOL,
        regular_b_holds: b_irregular as f64 <= b_budget + TOL,
        density_stability_holds: deviating_pairs as f64 <= a_budget + TOL,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubclusterSelection {
    /// `j_i` for every block `i` of `A`, counted from 0.
    pub chosen: Vec<usize>,
    pub a_prime: Vec<Vec<usize>>,
    /// Chosen pairs not certified `ℰ(k)`-regular.
    pub irregular_pairs: usize,
    /// Chosen pairs with `‖d(V_i,V_i') − d(V_i',V_i'')‖∞ ≥ ℰ(0)`.
    pub deviating_pairs: usize,
    pub exhaustive: bool,
    pub draws: usize,
    /// `min |V_i'| / n`.
    pub min_fraction: f64,
}

/// Picks one part of every block of `A`, minimizing (irregular, deviating)
/// pair counts lexicographically. All `ℓ^k` choices are tried when that is at
/// most `trials`; otherwise `trials` seeded uniform draws are made.
pub fn select_subclusters<G: EdgeColoring>(
    g: &G,
    d: &DecompositionResult,
    e: &EFunction,
    trials: usize,
    seed: u64,
) -> Result<SubclusterSelection> {
    let (k, l) = (d.k, d.l);
    let children = d.children();
    let eps0 = e.eval(0);
    let eps_k = e.eval(k);
    let coarse = BlockDensities::new(g, &d.a)?;
    let fine = BlockDensities::new(g, &d.b)?;
    let kb = d.b.order();

    // flags[x * kb + y] for parts x, y of different blocks: (irregular, deviating)
    let pairs = block_pairs(k);
    let computed: Vec<Vec<(usize, usize, bool, bool)>> = pairs
        .par_iter()
        .map(|&(i, i2)| -> Result<Vec<(usize, usize, bool, bool)>> {
            let parent = coarse.vector(i, i2);
            let mut out = Vec::with_capacity(l * l);
            for &x in &children[i] {
                for &y in &children[i2] {
                    let irregular = d.certifier.certify(g, d.b.block(x), d.b.block(y), eps_k)?.is_irregular();
                    let deviating = fine.vector(x, y).sup_distance(&parent).0 >= eps0 - TOL;
                    out.push((x, y, irregular, deviating));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut flags = vec![(false, false); kb * kb];
    for (x, y, irregular, deviating) in computed.into_iter().flatten() {
        flags[x * kb + y] = (irregular, deviating);
    }

    let quality = |choice: &[usize]| -> (usize, usize) {
        let mut q = (0, 0);
        for &(i, i2) in &pairs {
            let (irr, dev) = flags[children[i][choice[i]] * kb + children[i2][choice[i2]]];
            q.0 += usize::from(irr);
            q.1 += usize::from(dev);
        }
        q
    };

    let trials = trials.max(1);
    let space = (l as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    let exhaustive = space <= trials as u128;
    let mut best: Option<((usize, usize), Vec<usize>)> = None;
    let mut consider = |choice: &[usize]| {
        let q = quality(choice);
        if best.as_ref().is_none_or(|(bq, _)| q < *bq) {
            best = Some((q, choice.to_vec()));
        }
    };
    let draws;
    if exhaustive {
        draws = space as usize;
        let mut choice = vec![0; k];
        loop {
            consider(&choice);
            let Some(pos) = (0..k).rev().find(|&i| choice[i] + 1 < l) else { break };
            choice[pos] += 1;
            choice[pos + 1..].iter_mut().for_each(|c| *c = 0);
        }
    } else {
        draws = trials;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let choice: Vec<usize> = (0..k).map(|_| rng.random_range(0..l)).collect();
            consider(&choice);
        }
    }
    let ((irregular_pairs, deviating_pairs), chosen) = best.expect("at least one draw");
    let a_prime: Vec<Vec<usize>> =
        chosen.iter().enumerate().map(|(i, &j)| d.b.block(children[i][j]).to_vec()).collect();
    let min_fraction = a_prime.iter().map(Vec::len).min().unwrap_or(0) as f64 / g.vertex_count() as f64;
    Ok(SubclusterSelection { chosen, a_prime, irregular_pairs, deviating_pairs, exhaustive, draws, min_fraction })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SlicingReport {
    /// `min(|A_sub|/|A|, |B_sub|/|B|)`.
    pub eps: f64,
    /// `max(2, ε⁻¹)·γ`.
    pub eta: f64,
    pub deviation: f64,
    pub sub_verdict: Verdict,
    /// Deviation at most `γ` and the slice not shown `η`-irregular.
    pub holds: bool,
}

/// Checks the conclusion of the slicing lemma for `A_sub ⊆ A`, `B_sub ⊆ B`.
pub fn verify_slicing<G: EdgeColoring>(
    g: &G,
    a: &[usize],
    b: &[usize],
    a_sub: &[usize],
    b_sub: &[usize],
    gamma: f64,
) -> Result<SlicingReport> {
    check_disjoint(g.vertex_count(), a, b)?;
    check_disjoint(g.vertex_count(), a_sub, b_sub)?;
    for (sub, set) in [(a_sub, a), (b_sub, b)] {
        if sub.iter().any(|v| !set.contains(v)) {
            return Err(Error::BadPartition("slice is not a subset of its side".into()));
        }
    }
    let eps = (a_sub.len() as f64 / a.len() as f64).min(b_sub.len() as f64 / b.len() as f64);
    if eps < gamma - TOL {
        return Err(Error::SliceTooSmall { fraction: eps, gamma });
    }
    let eta = (1.0 / eps).max(2.0) * gamma;
    let deviation = density_vector(g, a, b)?.sup_distance(&density_vector(g, a_sub, b_sub)?).0;
    let sub_verdict = if eta >= 1.0 {
        Verdict::Regular
    } else if a_sub.len() <= EXACT_CAP && b_sub.len() <= EXACT_CAP {
        is_regular_exact(g, a_sub, b_sub, eta)?.verdict
    } else {
        irregularity_witness_heuristic(g, a_sub, b_sub, eta)?.verdict
    };
    Ok(SlicingReport {
        eps,
        eta,
        deviation,
        sub_verdict,
        holds: deviation <= gamma + TOL && sub_verdict != Verdict::Irregular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{sample_rgraph, ColorProbabilities, ColoredGraph};

    #[test]
    fn efunction_parsing_and_monotonicity() {
        let e: EFunction = "0.3/(k+1)".parse().unwrap();
        assert!((e.eval(0) - 0.3).abs() < 1e-15);
        assert!((e.eval(2) - 0.1).abs() < 1e-15);
        let c: EFunction = " 0.25 ".parse().unwrap();
        assert_eq!((c.eval(0), c.eval(100)), (0.25, 0.25));
        let t: EFunction = "0.25,3:0.1,5:0.2".parse().unwrap();
        assert_eq!((t.eval(2), t.eval(3), t.eval(5), t.eval(9)), (0.25, 0.1, 0.1, 0.1));
        assert_eq!(t.to_string().parse::<EFunction>().unwrap(), t);
        for bad in ["1.5", "0", "k^2", "0.3/(k+2)", "0.2,x:0.1"] {
            assert!(matches!(bad.parse::<EFunction>(), Err(Error::BadEFunction(_))), "{bad}");
        }
    }

    #[test]
    fn iteration_bound_formula() {
        assert_eq!(iteration_bound(2, 0.5), 513);
        assert_eq!(iteration_bound(3, 0.3), (64.0 / (3.0 * 0.0081f64)).floor() as usize + 1);
    }

    #[test]
    fn monochromatic_regularizes_in_one_pass() {
        let g = ColoredGraph::monochromatic(30, 3, 2).unwrap();
        for m in [1, 3, 5] {
            let out = regularize(&g, m, 0.2, 256, Certifier::Auto, 4).unwrap();
            assert_eq!(out.partition.order(), m);
            assert_eq!(out.irregular_pairs, 0);
            assert_eq!(out.stop, StopReason::TargetMet);
            assert_eq!(out.index_trace.len(), 1);
        }
    }

    #[test]
    fn random_graph_meets_target() {
        let p = ColorProbabilities::new(vec![0.5, 0.5]).unwrap();
        let g = sample_rgraph(120, &p, 9).unwrap();
        let out = regularize(&g, 4, 0.25, 256, Certifier::Auto, 1).unwrap();
        let k = out.partition.order() as f64;
        assert!(out.irregular_pairs as f64 <= 0.25 * k * k);
    }

    #[test]
    fn aligned_two_blocks_stay_put() {
        let g = ColoredGraph::from_fn(20, 2, |u, v| if (u < 10) == (v < 10) { 1 } else { 2 }).unwrap();
        let start = Equipartition::new(20, vec![(0..10).collect(), (10..20).collect()]).unwrap();
        let out = regularize_from(&g, start.clone(), 0.2, 256, Certifier::Auto).unwrap();
        assert_eq!(out.partition, start);
        // d(V_1, V_2) = (0, 1)
        assert!((out.index_trace[0] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn monochromatic_decomposition_has_no_deviation() {
        let g = ColoredGraph::monochromatic(40, 2, 1).unwrap();
        let e = EFunction::constant(0.25).unwrap();
        let d = decompose(&g, 2, &e, 64, 3).unwrap();
        assert!(d.pair_stats.deviating_sub_pairs.iter().all(|&c| c == 0));
        assert_eq!(d.pair_stats.a_irregular + d.pair_stats.b_irregular, 0);
        assert_eq!(d.b.order(), d.k * d.l);
        assert_eq!(d.iterations, d.index_trace.len());
    }

    #[test]
    fn too_small_graph() {
        let g = ColoredGraph::monochromatic(5, 2, 1).unwrap();
        let e = EFunction::constant(0.25).unwrap();
        assert!(matches!(decompose(&g, 3, &e, 256, 0), Err(Error::GraphTooSmall(_))));
    }

    #[test]
    fn selection_on_monochromatic() {
        let g = ColoredGraph::monochromatic(36, 2, 2).unwrap();
        let e = EFunction::constant(0.25).unwrap();
        let d = decompose(&g, 3, &e, 64, 5).unwrap();
        let s = select_subclusters(&g, &d, &e, 20, 1).unwrap();
        assert_eq!((s.irregular_pairs, s.deviating_pairs), (0, 0));
        for (i, part) in s.a_prime.iter().enumerate() {
            assert!(part.iter().all(|v| d.a.block(i).contains(v)));
        }
    }

    #[test]
    fn slicing_examples() {
        let p = ColorProbabilities::new(vec![0.5, 0.5]).unwrap();
        let g = sample_rgraph(20, &p, 2).unwrap();
        let (a, b): (Vec<usize>, Vec<usize>) = ((0..10).collect(), (10..20).collect());
        let same = verify_slicing(&g, &a, &b, &a, &b, 0.3).unwrap();
        assert_eq!(same.deviation, 0.0);
        assert!(same.holds);

        let trivial = verify_slicing(&g, &a, &b, &a[..6], &b[..6], 0.5).unwrap();
        assert!(trivial.eta >= 1.0);
        assert_eq!(trivial.sub_verdict, Verdict::Regular);

        let mono = ColoredGraph::monochromatic(20, 2, 1).unwrap();
        assert_eq!(verify_slicing(&mono, &a, &b, &a[2..7], &b[..5], 0.4).unwrap().deviation, 0.0);
        assert!(matches!(verify_slicing(&g, &a, &b, &a[..2], &b, 0.3), Err(Error::SliceTooSmall { .. })));
    }
}
