//! Cogrowth and the rank bound of the commutator subgroup of F₂, whose
//! coset graph is the square grid.

use stallings::coset_graph::AbelianQuotient;
use stallings::growth::{cogrowth_in, r_series};
use stallings::transversal::Transversal;

fn main() -> stallings::Result<()> {
    let grid = AbelianQuotient::commutator(2);
    let horizon = 10;
    let big = cogrowth_in(&grid, horizon)?.integers()?;
    let t = Transversal::minimal(&grid, horizon + 1)?;
    let r = r_series(&t, horizon)?.integers()?;
    println!("i,Gamma,2i^2+2i+1,r,2i^2");
    for i in 0..=horizon as i64 {
        let k = i as usize;
        println!("{i},{},{},{},{}", big[k], 2 * i * i + 2 * i + 1, r[k], 2 * i * i);
    }
    Ok(())
}
