//! The partition index rises under refinement; the defect Cauchy–Schwarz
//! inequality quantifies the gain.

use regracut::density::{corollary_cs_check, defect_cs_check, index};
use regracut::graph::{equipartition, refine_equipartition, sample_rgraph, ColorProbabilities};

fn main() -> regracut::Result<()> {
    let p = ColorProbabilities::new(vec![0.5, 0.5])?;
    let g = sample_rgraph(48, &p, 11)?;
    let mut part = equipartition(48, 2, 11)?;
    for _ in 0..4 {
        println!("order {:>2}: index {:.5}", part.order(), index(&g, &part)?);
        part = refine_equipartition(&part, 2, 11)?;
    }

    for (xs, m) in [(vec![1.0, 1.0, 1.0, 1.0], 2), (vec![2.0, 0.0], 1), (vec![3.0, 0.5, 1.0, 0.0, 2.0], 2)] {
        let r = defect_cs_check(&xs, m)?;
        println!("{xs:?}, m = {m}: alpha {:.3}, {:.4} >= {:.4}", r.alpha, r.lhs, r.rhs);
    }

    let a: Vec<usize> = (0..8).collect();
    let b: Vec<usize> = (8..16).collect();
    let halves = |s: &[usize]| vec![s[..4].to_vec(), s[4..].to_vec()];
    let c = corollary_cs_check(&g, &a, &b, &halves(&a), &halves(&b), 1, 0.2)?;
    println!(
        "corollary: {} deviating sub-pairs, sum of sub-densities {:.4} = 4 x {:.4}",
        c.premise_count, c.density_sum, c.parent_density
    );
    Ok(())
}
