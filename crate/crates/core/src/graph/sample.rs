use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Arrow, ColoredGraph, Digraph, Palette};
use crate::error::{Error, Result};

const SUM_TOL: f64 = 1e-12;

/// Color probabilities `p_1..p_r` of a random r-graph.
#[derive(Clone, Debug, PartialEq)]
pub struct ColorProbabilities(Vec<f64>);

impl ColorProbabilities {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.len() < 2 {
            return Err(Error::BadDistribution(format!("need at least 2 colors, got {}", p.len())));
        }
        if p.iter().any(|&x| !x.is_finite() || x < 0.0) {
            return Err(Error::BadDistribution("entries must be finite and nonnegative".into()));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::BadDistribution(format!("entries sum to {sum}, not 1")));
        }
        Ok(ColorProbabilities(p))
    }

    pub fn r(&self) -> usize {
        self.0.len()
    }

    /// Probability of `color` (1-based).
    pub fn get(&self, color: usize) -> f64 {
        self.0[color - 1]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Digraph state probabilities: bi with `p`, each orientation with `q`,
/// none with `1 - p - 2q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArrowProbabilities {
    p: f64,
    q: f64,
}

impl ArrowProbabilities {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(p.is_finite() && q.is_finite()) || p < 0.0 || q < 0.0 || p + 2.0 * q > 1.0 + SUM_TOL {
            return Err(Error::BadDistribution(format!("(p, q) = ({p}, {q}) needs p, q >= 0 and p + 2q <= 1")));
        }
        Ok(ArrowProbabilities { p, q })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn none(&self) -> f64 {
        (1.0 - self.p - 2.0 * self.q).max(0.0)
    }

    pub fn of(&self, a: Arrow) -> f64 {
        match a {
            Arrow::None => self.none(),
            Arrow::Bi => self.p,
            Arrow::Back | Arrow::Fwd => self.q,
        }
    }

    /// Checks the extra restrictions a palette places on `(p, q)`.
    pub fn check_palette(&self, palette: Palette) -> Result<()> {
        let close = |a: f64, b: f64| (a - b).abs() <= SUM_TOL;
        let ok = match palette {
            Palette::P0 => true,
            Palette::P1 => close(self.p + 2.0 * self.q, 1.0),
            Palette::P2 => close(self.p, 0.0) && self.q <= 0.5 + SUM_TOL,
            Palette::P3 => close(self.q, 0.0),
            Palette::P4 => close(self.p, 0.0) && close(self.q, 0.5),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::BadDistribution(format!(
                "(p, q) = ({}, {}) is not allowed in palette {palette}",
                self.p, self.q
            )))
        }
    }
}

/// Probability vector of either kind.
#[derive(Clone, Debug, PartialEq)]
pub enum ProbabilityVector {
    Colors(ColorProbabilities),
    Arrows(ArrowProbabilities),
}

/// Colors every pair independently, color `ρ` with probability `p_ρ`.
pub fn sample_rgraph(n: usize, p: &ColorProbabilities, seed: u64) -> Result<ColoredGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dist = WeightedIndex::new(p.as_slice()).map_err(|e| Error::BadDistribution(e.to_string()))?;
    ColoredGraph::from_fn(n, p.r(), |_, _| dist.sample(&mut rng) + 1)
}

/// Gives every pair `u < v` independently the state bi (`p`), fwd (`q`),
/// back (`q`) or none (`1 - p - 2q`).
pub fn sample_digraph(n: usize, p: f64, q: f64, seed: u64) -> Result<Digraph> {
    let probs = ArrowProbabilities::new(p, q)?;
    let weights: Vec<f64> = Arrow::ALL.iter().map(|&a| probs.of(a)).collect();
    let dist = WeightedIndex::new(&weights).map_err(|e| Error::BadDistribution(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Digraph::from_fn(n, |_, _| Arrow::ALL[dist.sample(&mut rng)])
}
