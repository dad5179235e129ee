//! Exact distance to a hereditary property against the cost of fitting a
//! graph to a type.

use regracut::graph::{sample_rgraph, ColorProbabilities};
use regracut::types::{
    distance_to_property, enumerate_types, find_induced_copy, fit_to_type, Assignment, ForbiddenFamily, TypeKind,
};
use regracut::{AnyGraph, ColoredGraph};

fn main() -> regracut::Result<()> {
    let triangle = ColoredGraph::monochromatic(3, 2, 1)?;
    let family = ForbiddenFamily::colored(vec![triangle.clone()])?;
    let types = enumerate_types(TypeKind::RType { r: 2 }, 3, &family)?;
    let p = ColorProbabilities::new(vec![0.6, 0.4])?;

    for seed in 0..4 {
        let g = AnyGraph::Colored(sample_rgraph(7, &p, seed)?);
        let exact = distance_to_property(&g, &family)?;
        let mut best = usize::MAX;
        for t in &types.types {
            let fit = fit_to_type(&g, t, &Assignment::BestOf { trials: 10, seed })?;
            if let AnyGraph::Colored(h) = &fit.graph {
                assert!(find_induced_copy(h, &triangle).is_none());
            }
            best = best.min(fit.cost);
        }
        println!("seed {seed}: distance {} <= best fit {best}", exact.distance);
    }
    Ok(())
}
