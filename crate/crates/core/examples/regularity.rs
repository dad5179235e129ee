//! Density vectors and γ-regularity: a planted biclique is caught by both
//! the exhaustive checker and the degree heuristic.

use regracut::density::{density_vector, irregularity_witness_heuristic, is_regular_exact};
use regracut::ColoredGraph;

fn main() -> regracut::Result<()> {
    // color 1 between {0,1,2} and {6,7,8}, color 2 elsewhere
    let g = ColoredGraph::from_fn(12, 2, |u, v| if u < 3 && (6..9).contains(&v) { 1 } else { 2 })?;
    let a: Vec<usize> = (0..6).collect();
    let b: Vec<usize> = (6..12).collect();
    println!("d(A, B) = {:?}", density_vector(&g, &a, &b)?.entries());

    let exact = is_regular_exact(&g, &a, &b, 0.3)?;
    println!("exact: {:?}", exact.verdict);
    if let Some(w) = &exact.witness {
        println!("  A' = {:?}, B' = {:?}, color {} off by {:.3}", w.a_prime, w.b_prime, w.color, w.deviation);
        let sub = density_vector(&g, &w.a_prime, &w.b_prime)?;
        println!("  re-evaluated d(A', B') = {:?}", sub.entries());
    }

    let heuristic = irregularity_witness_heuristic(&g, &a, &b, 0.3)?;
    println!("heuristic: {:?}", heuristic.verdict);

    let mono = ColoredGraph::monochromatic(12, 2, 2)?;
    println!("monochromatic pair: {:?}", is_regular_exact(&mono, &a, &b, 0.3)?.verdict);
    Ok(())
}
