//! Types, their `f_K` values and the types avoiding a color-1 triangle.

use regracut::graph::{ArrowProbabilities, ColorProbabilities, ProbabilityVector};
use regracut::types::{enumerate_types, f_k, lower_bound_fk, ForbiddenFamily, TypeGraph, TypeKind};
use regracut::{Arrow, ColoredGraph, Palette};

fn main() -> regracut::Result<()> {
    let p = ProbabilityVector::Colors(ColorProbabilities::new(vec![0.3, 0.7])?);
    let one = TypeGraph::rtype(2, &[vec![1]], &[])?;
    let mixed = TypeGraph::rtype(2, &[vec![1], vec![2]], &[(0, 1, vec![1, 2])])?;
    println!("f(single {{1}}) = {}", f_k(&one, &p)?);
    println!("f(mixed pair) = {}", f_k(&mixed, &p)?);
    println!("{}", mixed.to_json());

    let q = ProbabilityVector::Arrows(ArrowProbabilities::new(0.0, 0.5)?);
    let both = TypeGraph::dirtype(Palette::P0, &[vec![Arrow::Fwd, Arrow::Back]], &[])?;
    println!("f(tournament fiber) at q = 1/2: {}", f_k(&both, &q)?);

    let family = ForbiddenFamily::colored(vec![ColoredGraph::monochromatic(3, 2, 1)?])?;
    let types = enumerate_types(TypeKind::RType { r: 2 }, 2, &family)?;
    println!("{} types on at most 2 vertices avoid a color-1 triangle", types.len());
    let lb = lower_bound_fk(&p, &types, 100)?;
    println!("best f = {:.3} from {}, bound at n = 100: {:.1}", lb.f_k, lb.best.to_json(), lb.value);
    Ok(())
}
