//! Generalized word problem in ℤ² = ⟨a, b | abAB⟩ for the subgroup ⟨a⟩,
//! decided with the volumes of balls in its coset graph.

use stallings::membership::{Decision, GwpInstance, GwpSolver, DEFAULT_GWP_BUDGET};
use stallings::words::reduced_words_of_length;

fn main() -> stallings::Result<()> {
    let values: Vec<String> = (0..8).map(|i| (2 * i + 1).to_string()).collect();
    let json = format!(r#"{{"relators": ["abAB"], "subgroup": ["a"], "oracle": {{"kind": "Gamma", "values": [{}]}}}}"#, values.join(","));
    let mut solver = GwpSolver::new(GwpInstance::from_json(&json)?, DEFAULT_GWP_BUDGET)?;
    let (mut members, mut total) = (0, 0);
    for len in 0..=6 {
        for w in reduced_words_of_length(2, len) {
            if solver.decide(&w)?.decision == Decision::Member {
                members += 1;
            }
            total += 1;
        }
    }
    println!("{members} of {total} words of length <= 6 lie in <a>");
    println!("certified ball volumes: {:?}", solver.certified());
    Ok(())
}
