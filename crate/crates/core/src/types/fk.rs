use serde::Serialize;

use super::{TypeFamily, TypeGraph, TypeKind, ARROW_BITS, BI_BIT, NONE_BIT};
use crate::error::{Error, Result};
use crate::graph::ProbabilityVector;

/// `f_K(p) = (1/k²) 𝟙ᵀ(J − Σ_ρ p_ρ A_ρ)𝟙`, diagonal included. For dir-types
/// the arrow matrix counts 2 where both arrows are allowed and the none
/// weight is `1 − p − 2q`.
pub fn f_k(k: &TypeGraph, p: &ProbabilityVector) -> Result<f64> {
    let n = k.k();
    let kept = |x: usize, y: usize| -> f64 {
        let m = k.label(x, y);
        match (k.kind(), p) {
            (TypeKind::RType { .. }, ProbabilityVector::Colors(c)) => {
                c.as_slice().iter().enumerate().filter(|(i, _)| m & (1 << i) != 0).map(|(_, w)| w).sum()
            }
            (TypeKind::DirType { .. }, ProbabilityVector::Arrows(a)) => {
                let on = |b: u8| if m & b != 0 { 1.0 } else { 0.0 };
                a.none() * on(NONE_BIT) + a.p() * on(BI_BIT) + a.q() * (m & ARROW_BITS).count_ones() as f64
            }
            _ => unreachable!("checked below"),
        }
    };
    match (k.kind(), p) {
        (TypeKind::RType { r }, ProbabilityVector::Colors(c)) if c.r() != r => {
            return Err(Error::DimensionMismatch(format!("type has r = {r}, probability vector has {} entries", c.r())))
        }
        (TypeKind::RType { .. }, ProbabilityVector::Colors(_))
        | (TypeKind::DirType { .. }, ProbabilityVector::Arrows(_)) => {}
        _ => return Err(Error::DimensionMismatch("r-types take color probabilities, dir-types take (p, q)".into())),
    }
    let mut total = 0.0;
    for x in 0..n {
        for y in 0..n {
            total += 1.0 - kept(x, y);
        }
    }
    Ok(total / (n * n) as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LowerBound {
    pub best: TypeGraph,
    pub f_k: f64,
    /// `f_K(p)·C(n,2)`.
    pub value: f64,
}

/// The type of `family` minimizing `f_K(p)` (first on ties) and the
/// asymptotic lower bound `f_K(p)·C(n,2)` on the distance of `G(n, p)`.
pub fn lower_bound_fk(p: &ProbabilityVector, family: &TypeFamily, n: usize) -> Result<LowerBound> {
    let mut best: Option<(f64, &TypeGraph)> = None;
    for t in &family.types {
        let v = f_k(t, p)?;
        if best.is_none_or(|(b, _)| v < b) {
            best = Some((v, t));
        }
    }
    let (fk, t) = best.ok_or(Error::EmptyFamily)?;
    let pairs = (n * n.saturating_sub(1) / 2) as f64;
    Ok(LowerBound { best: t.clone(), f_k: fk, value: fk * pairs })
}

/// The bracketed error term of the finite-`n` lower bound for a partition of
/// order `k` with parameter `ε`:
/// `(C(n,2) − (k²/2)⌊n/k⌋²) + (k/2)⌊n/k⌋² + r·C(k,2)·⌊n/k⌋^{5/3} + ε·r·C(k,2)·⌈n/k⌉² + ε·k²·⌈n/k⌉²`.
pub fn error_term(n: usize, k: usize, r: usize, eps: f64) -> f64 {
    let (nf, kf, rf) = (n as f64, k as f64, r as f64);
    let lo = (n / k) as f64;
    let hi = n.div_ceil(k) as f64;
    let ck2 = kf * (kf - 1.0) / 2.0;
    (nf * (nf - 1.0) / 2.0 - kf * kf / 2.0 * lo * lo)
        + kf / 2.0 * lo * lo
        + rf * ck2 * lo.powf(5.0 / 3.0)
        + eps * rf * ck2 * hi * hi
        + eps * kf * kf * hi * hi
}
