//! Membership, distance to a transversal, rewriting in a Schreier basis, and
//! the generalized word problem in a finitely presented group.

mod gwp;

use serde::Serialize;

pub use gwp::{gwp_decide, normal_quotient, Decision, GwpInstance, GwpReport, GwpSolver, Oracle, OracleKind, QuotientBuilder, DEFAULT_GWP_BUDGET};

use crate::coset_graph::CosetGraph;
use crate::error::{Error, Result};
use crate::transversal::{SchreierBasis, Transversal};
use crate::words::Word;

/// Whether `w` lies in the subgroup whose graph is `g`.
pub fn contains(g: &CosetGraph, w: &Word) -> bool {
    g.accepts(w)
}

/// `d(w, T)`: the length of `w` beyond its longest prefix in `T`.
pub fn distance_to_transversal(t: &Transversal, w: &Word) -> Result<usize> {
    // make sure the walk does not leave an explored region
    t.vertex_of(w)?;
    Ok(w.len() - t.max_prefix(w).0)
}

/// `w = b₁^ε₁ ⋯ b_k^ε_k · w̄` with `b_j` basis elements and `w̄ ∈ T`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rewrite {
    /// Basis index and exponent `±1` of each factor.
    pub factors: Vec<(usize, i8)>,
    pub remainder: Word,
}

#[derive(Serialize)]
struct FactorJson {
    basis: String,
    exponent: i8,
}

#[derive(Serialize)]
struct RewriteJson {
    factors: Vec<FactorJson>,
    remainder: String,
}

impl Rewrite {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The reduced product of the factors and the remainder.
    pub fn product(&self, basis: &SchreierBasis) -> Word {
        let mut out = Word::identity(self.remainder.rank());
        for &(i, e) in &self.factors {
            let b = &basis.elements()[i].word;
            out = out.mul(&if e > 0 { b.clone() } else { b.invert() });
        }
        out.mul(&self.remainder)
    }

    pub fn to_json(&self, basis: &SchreierBasis) -> String {
        let j = RewriteJson {
            factors: self.factors.iter().map(|&(i, e)| FactorJson { basis: basis.elements()[i].word.to_string(), exponent: e }).collect(),
            remainder: self.remainder.to_string(),
        };
        serde_json::to_string_pretty(&j).expect("rewrite serialises")
    }
}

/// Rewrites `w` by repeatedly splitting off the basis element of the first
/// non-tree edge its path crosses. Each step shortens the part of the word
/// outside the transversal, so there are at most `d(w, T)` factors.
pub fn rewrite(t: &Transversal, basis: &SchreierBasis, w: &Word) -> Result<Rewrite> {
    let mut factors = Vec::new();
    let mut cur = w.clone();
    loop {
        let (p, v) = t.max_prefix(&cur);
        if p == cur.len() {
            return Ok(Rewrite { factors, remainder: cur });
        }
        let v = v.expect("walk stopped inside the region");
        let x = cur.letters()[p];
        let Some(to) = t.region().target(v, x) else {
            return Err(Error::OutsideRegion { vertex: v, radius: t.region().exact_radius() });
        };
        let (index, exponent) = if x.is_inverse() { (basis.index_of(to, x.inverse()), -1) } else { (basis.index_of(v, x), 1) };
        let index = index.expect("non-tree edge has a basis element");
        factors.push((index, exponent));
        cur = t.label(to).mul(&cur.suffix_from(p + 1));
    }
}
