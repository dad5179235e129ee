//! Sample an r-graph and a digraph, write them in the text format and read
//! them back.

use regracut::graph::io::{read_any, write_any};
use regracut::graph::{
    equipartition, palette_of, refine_equipartition, sample_digraph, sample_rgraph, ColorProbabilities,
};
use regracut::{AnyGraph, EdgeColoring};

fn main() -> regracut::Result<()> {
    let p = ColorProbabilities::new(vec![0.5, 0.3, 0.2])?;
    let g = sample_rgraph(6, &p, 1)?;
    let text = write_any(&AnyGraph::Colored(g.clone()));
    print!("{text}");
    assert_eq!(read_any(&text)?, AnyGraph::Colored(g.clone()));

    let big = sample_rgraph(1000, &p, 2)?;
    let ones = big.color_pair_count(1) as f64 / (1000.0 * 999.0 / 2.0);
    println!("color-1 frequency at n = 1000: {ones:.4}");

    let t = sample_digraph(5, 0.0, 0.5, 3)?;
    print!("{}", write_any(&AnyGraph::Directed(t.clone())));
    println!("arrow(0, 1) = {}, arrow(1, 0) = {}", t.arrow(0, 1), t.arrow(1, 0));
    println!("palette of the sampled tournament: {:?}", palette_of(&t));

    let a = equipartition(big.vertex_count(), 3, 9)?;
    let b = refine_equipartition(&a, 4, 9)?;
    let sizes: Vec<usize> = b.blocks().iter().map(Vec::len).collect();
    println!("3 blocks refined into {} with sizes {sizes:?}", b.order());
    Ok(())
}
