//! `Γ_T(i) ≤ m·r_T(i+m)` when the subgroup contains a normal subgroup
//! with a nontrivial element of length `m`, for kernels onto ℤ², ℤ/2 and
//! S₃.

use stallings::coset_graph::{AbelianQuotient, PermutationQuotient};
use stallings::growth::witness_bound_check;
use stallings::Word;

fn main() -> stallings::Result<()> {
    let grid = AbelianQuotient::commutator(2);
    let parity = PermutationQuotient::new(vec![vec![1, 0], vec![1, 0]])?;
    let s3 = PermutationQuotient::new(vec![vec![1, 0, 2], vec![1, 2, 0]])?;

    let reports = [
        ("Z^2", witness_bound_check(&grid, &Word::parse(2, "abAB")?, 15)?),
        ("Z/2", witness_bound_check(&parity, &Word::parse(2, "aa")?, 15)?),
        ("S3", witness_bound_check(&s3, &Word::parse(2, "aa")?, 15)?),
    ];
    for (name, report) in &reports {
        let last = report.rows.last().expect("rows");
        println!(
            "{name}: witness {} (m = {}), holds {}; at i = {}: {} <= {}*{}",
            report.witness,
            report.m,
            report.holds(),
            last.i,
            last.ball_minimal,
            report.m,
            last.r_minimal
        );
    }
    Ok(())
}
