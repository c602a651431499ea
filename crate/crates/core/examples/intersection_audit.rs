//! Intersection by graph product, with the cogrowth and rank-growth
//! audits.

use stallings::intersection::{burns_audit, cogrowth_product_check, intersect};
use stallings::{CosetGraph, Word};

fn main() -> stallings::Result<()> {
    let h1 = CosetGraph::from_generators(2, &Word::parse_list(2, "aa")?)?;
    let h2 = CosetGraph::from_generators(2, &Word::parse_list(2, "aaa")?)?;
    let h = intersect(&h1, &h2)?;
    println!("<aa> ∩ <aaa>: core with {} vertices, rank {}", h.vertex_count(), h.cyclomatic_rank());

    let rows = cogrowth_product_check(&h1, &h2, 8)?;
    println!("cogrowth bound holds up to 8: {}", rows.iter().all(|r| r.holds));

    let report = burns_audit(&h1, &h2, 8, 1_000_000)?;
    println!("i rk literal reference");
    for r in &report.rows {
        println!("{} {} {} {}", r.i, r.rk, r.literal_bound, r.reference_bound);
    }
    println!("literal form fails at {:?}; reference form fails at {:?}", report.literal_failures(), report.reference_failures());
    Ok(())
}
