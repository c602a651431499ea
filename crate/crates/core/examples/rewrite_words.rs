//! Membership, distance to the transversal, and rewriting in the Schreier
//! basis.

use stallings::membership::{contains, distance_to_transversal, rewrite};
use stallings::transversal::{schreier_basis, Strategy, Transversal};
use stallings::{CosetGraph, Word};

fn main() -> stallings::Result<()> {
    let g = CosetGraph::from_generators(2, &Word::parse_list(2, "abAB,aab")?)?;
    let t = Transversal::of_graph(&g, Strategy::ShortLexBfs)?;
    let basis = schreier_basis(&t);
    for text in ["aab", "abABaab", "bab", "BAab"] {
        let w = Word::parse(2, text)?;
        let r = rewrite(&t, &basis, &w)?;
        println!("{text}: member {}, distance {}, {} factors, remainder {}", contains(&g, &w), distance_to_transversal(&t, &w)?, r.len(), r.remainder);
        assert_eq!(r.product(&basis), w);
    }
    Ok(())
}
