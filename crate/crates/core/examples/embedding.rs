//! Embedding-lemma constants and copy counts on a planted 3-partite host.

use regracut::embedding::{check_embedding_lemma, embedding_constants};
use regracut::ColoredGraph;

fn main() -> regracut::Result<()> {
    for k in 2..=5 {
        let c = embedding_constants(0.4, k)?;
        println!("eta 0.4, k {k}: gamma {:.3e}, delta {:.3e}", c.gamma, c.delta);
    }

    // parts of 15; across parts color 1 unless (u + v) % 3 == 0
    let parts: Vec<Vec<usize>> = (0..3).map(|i| (15 * i..15 * (i + 1)).collect()).collect();
    let g = ColoredGraph::from_fn(45, 2, |u, v| if u / 15 != v / 15 && (u + v) % 3 != 0 { 1 } else { 2 })?;
    let triangle = ColoredGraph::monochromatic(3, 2, 1)?;
    let report = check_embedding_lemma(&g, &triangle, &parts, 0.4)?;
    for pair in &report.pairs {
        println!("pair ({}, {}): d_{} = {:.3}, {:?}", pair.i, pair.j, pair.color, pair.density, pair.regularity);
    }
    let c = report.copies;
    println!("copies {} of {} tuples, bound {:.2}, satisfied {}", c.count, c.total, c.bound, c.satisfied);
    Ok(())
}
