//! Digraph palettes, dir-types and the edit distance of tournaments to
//! transitivity.

use regracut::graph::{palette_of, sample_digraph, ArrowProbabilities, ProbabilityVector};
use regracut::types::{distance_to_property, embeds, enumerate_types, f_k, ForbiddenFamily, TypeGraph, TypeKind};
use regracut::{AnyGraph, Arrow, Digraph, Palette};

fn main() -> regracut::Result<()> {
    let empty = Digraph::from_fn(4, |_, _| Arrow::None)?;
    let mixed = Digraph::new(3, &[(0, 1, Arrow::None), (0, 2, Arrow::Bi), (1, 2, Arrow::Fwd)])?;
    println!("palettes: empty {:?}, mixed {:?}", palette_of(&empty), palette_of(&mixed));

    // cyclic triangle 0 -> 1 -> 2 -> 0
    let cyclic = Digraph::new(3, &[(0, 1, Arrow::Fwd), (1, 2, Arrow::Fwd), (0, 2, Arrow::Back)])?;
    let family = ForbiddenFamily::directed(vec![cyclic.clone()])?;
    let transitive = TypeGraph::dirtype(Palette::P4, &[vec![Arrow::Fwd]], &[])?;
    println!(
        "cyclic triangle embeds in a one-arrow fiber: {}",
        embeds(&AnyGraph::Directed(cyclic), &transitive)?.is_some()
    );

    let types = enumerate_types(TypeKind::DirType { palette: Palette::P4 }, 2, &family)?;
    println!("{} tournament types on at most 2 vertices avoid the cyclic triangle", types.len());
    let q = ProbabilityVector::Arrows(ArrowProbabilities::new(0.0, 0.5)?);
    println!("f of the transitive fiber at q = 1/2: {}", f_k(&transitive, &q)?);

    for seed in 0..3 {
        let t = AnyGraph::Directed(sample_digraph(6, 0.0, 0.5, seed)?);
        println!("tournament {seed}: {} reversals to transitive", distance_to_property(&t, &family)?.distance);
    }
    Ok(())
}
