pub mod cli;
pub mod complexes;
pub mod coset_graph;
pub mod error;
pub mod growth;
pub mod intersection;
pub mod membership;
pub mod random;
pub mod rank_formula;
pub mod transversal;
pub mod words;

pub use coset_graph::{CosetGraph, CosetSpace, Region, Subgraph};
pub use error::{Error, Result};
pub use words::{Alphabet, Letter, Word};
