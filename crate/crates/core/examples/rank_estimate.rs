//! The rank expression over growing tree balls settles at the rank of a
//! finitely generated subgroup, and keeps growing for an infinitely
//! generated one.

use stallings::coset_graph::AbelianQuotient;
use stallings::rank_formula::rank_estimate;
use stallings::transversal::{Strategy, Transversal};
use stallings::{CosetGraph, Word};

fn main() -> stallings::Result<()> {
    let g = CosetGraph::from_generators(2, &Word::parse_list(2, "abAB,aab")?)?;
    let t = Transversal::of_graph(&g, Strategy::ShortLexBfs)?;
    let est = rank_estimate(&t, 8)?;
    let values: Vec<String> = est.values.iter().map(ToString::to_string).collect();
    println!("<abAB,aab>: {} -> {}", values.join(" "), est.verdict_line());

    let commutator = AbelianQuotient::commutator(2);
    let t = Transversal::minimal(&commutator, 9)?;
    let est = rank_estimate(&t, 8)?;
    let values: Vec<String> = est.values.iter().map(ToString::to_string).collect();
    println!("[F,F]: {} -> {}", values.join(" "), est.verdict_line());
    Ok(())
}
