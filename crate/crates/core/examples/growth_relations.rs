//! Ball ranks, rank growth and the rank bound, side by side.

use stallings::coset_graph::Completion;
use stallings::growth::{relation_checks, DEFAULT_BUDGET};
use stallings::Word;

fn main() -> stallings::Result<()> {
    for gens in ["a", "aa,bb", "abAB"] {
        let space = Completion::from_generators(2, &Word::parse_list(2, gens)?)?;
        let report = relation_checks(&space, 3, DEFAULT_BUDGET)?;
        println!("<{gens}>");
        println!("  i rho r rk(2i+1) all_out x_out");
        for row in &report.rows {
            let rk = row.rk_odd.map_or("-".to_string(), |k| k.to_string());
            println!("  {} {} {} {} {} {}", row.i, row.rho, row.r, rk, row.all_out_edges, row.x_out_edges);
        }
        println!("  rho = rk(2i+1): {}, sandwich: {}, differences: {}", report.odd_rank_growth_holds(), report.sandwich_holds(), report.difference_holds());
    }
    Ok(())
}
