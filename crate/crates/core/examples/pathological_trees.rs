//! One graph, two spanning trees: one grows linearly, the other much
//! faster.

use stallings::growth::equivalence_probe;
use stallings::growth::pathological::{build_pathological, constructed_growth, pathological_transversals};

fn main() -> stallings::Result<()> {
    let pg = build_pathological(8, 6)?;
    println!("{} vertices, max degree {}", pg.graph.vertex_count(), pg.max_degree());
    let (linear, exponential) = pathological_transversals(&pg)?;
    let gl = constructed_growth(&linear);
    let ge = constructed_growth(&exponential);
    println!("exponential tree height {}", ge.len() - 1);
    for i in (0..ge.len()).step_by(8) {
        println!("i = {i:3}: linear {:4}, exponential {:4}", gl[i], ge[i]);
    }
    let probe = equivalence_probe(&gl[..ge.len()], &ge, 4);
    println!("{}", probe.describe());
    Ok(())
}
