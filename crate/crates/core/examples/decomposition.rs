//! Refine a random 3-colored graph into a pair of partitions `A`, `B` and
//! pick one part of every block of `A`.

use regracut::decomposition::{decompose, iteration_bound, select_subclusters, EFunction};
use regracut::graph::{sample_rgraph, ColorProbabilities};

fn main() -> regracut::Result<()> {
    let p = ColorProbabilities::new(vec![0.3, 0.3, 0.4])?;
    let g = sample_rgraph(240, &p, 7)?;
    let e: EFunction = "0.3/(k+1)".parse()?;

    let d = decompose(&g, 3, &e, 256, 7)?;
    println!("|A| = {}, |B| = {} (l = {})", d.k, d.b.order(), d.l);
    println!("chain length {} (bound {}), stopped: {:?}", d.iterations, iteration_bound(3, e.eval(0)), d.stop);
    let trace: Vec<String> = d.index_trace.iter().map(|x| format!("{x:.4}")).collect();
    println!("index trace: {}", trace.join(" "));

    let s = &d.pair_stats;
    println!("A pairs shown irregular at {:.3}: {} (budget {:.2})", s.eps0, s.a_irregular, s.a_budget);
    println!("B sub-pairs shown irregular at {:.4}: {} (budget {:.2})", s.eps_k, s.b_irregular, s.b_budget);
    println!("pairs with too many deviating sub-pairs: {}", s.deviating_pairs);

    let sel = select_subclusters(&g, &d, &e, 200, 1)?;
    println!(
        "chosen parts {:?}: {} irregular, {} deviating, smallest part {:.3} n",
        sel.chosen, sel.irregular_pairs, sel.deviating_pairs, sel.min_fraction
    );
    Ok(())
}
