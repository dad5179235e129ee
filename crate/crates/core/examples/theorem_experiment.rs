//! Mean exact distance of `G(n, p)` to "no color-1 edge" against the `f_K`
//! bound `f_K(p)·C(n,2)`.

use regracut::graph::{ColorProbabilities, ProbabilityVector};
use regracut::types::{experiment_theorem_app, ForbiddenFamily};
use regracut::ColoredGraph;

fn main() -> regracut::Result<()> {
    let family = ForbiddenFamily::colored(vec![ColoredGraph::monochromatic(2, 2, 1)?])?;
    let p = ProbabilityVector::Colors(ColorProbabilities::new(vec![0.5, 0.5])?);
    let report = experiment_theorem_app(&family, &p, &[4, 5, 6, 7], 200, 2)?;
    println!("f_K = {:?} over {} types", report.f_k, report.family_size);
    for row in &report.rows {
        println!(
            "n {}: mean {:.3} +- {:.3}, range {}..={}, bound {:?}",
            row.n, row.mean, row.std_error, row.min, row.max, row.bound
        );
    }
    Ok(())
}
