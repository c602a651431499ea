//! Folds a few subgroups of F₂ and prints their graphs.

use stallings::{CosetGraph, Word};

fn main() -> stallings::Result<()> {
    for gens in ["aa,ab,ba", "abAB,aab", "aBAb,bb"] {
        let g = CosetGraph::from_generators(2, &Word::parse_list(2, gens)?)?;
        let core = g.core();
        println!(
            "<{gens}>: {} vertices, rank {}, index {:?}, core has {} vertices",
            g.vertex_count(),
            g.cyclomatic_rank(),
            g.finite_index(),
            core.vertex_count()
        );
    }
    let even = CosetGraph::from_generators(2, &Word::parse_list(2, "aa,ab,ba")?)?;
    println!("{}", even.to_dot());
    Ok(())
}
