//! Schreier transversal and free basis of a finite-index subgroup.

use stallings::transversal::{schreier_basis, schreier_formula, verify_schreier_property, Strategy, Transversal};
use stallings::{CosetGraph, Word};

fn main() -> stallings::Result<()> {
    let g = CosetGraph::from_generators(2, &Word::parse_list(2, "aa,ab,ba")?)?;
    let t = Transversal::of_graph(&g, Strategy::ShortLexBfs)?;
    let labels: Vec<String> = t.labels().iter().map(Word::to_string).collect();
    println!("transversal: {}", labels.join(", "));

    let basis = schreier_basis(&t);
    println!("{}", basis.to_json());
    let index = g.finite_index().expect("complete graph");
    println!("basis size {} = 1 + (n-1)m = {}", basis.len(), schreier_formula(2, index));
    println!("prefix closed and reduced: {}", verify_schreier_property(t.labels()));
    Ok(())
}
