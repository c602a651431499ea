//! Intersections of subgroups through the product of their graphs, and two
//! audits over pairs of subgroups: cogrowth is submultiplicative under
//! intersection, and a Burns-type bound on rank growth.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::coset_graph::CosetGraph;
use crate::error::{Error, Result};
use crate::growth::{cogrowth, rank_growth};
use crate::words::Letter;

/// Base component of the product of two graphs.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    /// Canonically numbered, not core-reduced.
    pub graph: CosetGraph,
    /// The pair of factor vertices behind each product vertex.
    pub pairs: Vec<(u32, u32)>,
}

impl FiberProduct {
    pub fn new(g1: &CosetGraph, g2: &CosetGraph) -> Result<Self> {
        if g1.rank() != g2.rank() {
            return Err(Error::AlphabetMismatch { left: g1.rank(), right: g2.rank() });
        }
        let rank = g1.rank();
        let mut index = HashMap::from([((0u32, 0u32), 0u32)]);
        let mut pairs = vec![(0u32, 0u32)];
        let mut edges = Vec::new();
        let mut queue = VecDeque::from([0u32]);
        while let Some(p) = queue.pop_front() {
            let (u1, u2) = pairs[p as usize];
            for k in 0..rank {
                let x = Letter::new(k, false);
                let (Some(v1), Some(v2)) = (g1.target(u1, x), g2.target(u2, x)) else { continue };
                let next = *index.entry((v1, v2)).or_insert_with(|| {
                    pairs.push((v1, v2));
                    queue.push_back(pairs.len() as u32 - 1);
                    pairs.len() as u32 - 1
                });
                edges.push((p, x, next));
            }
            // inverse letters only discover vertices; their edges are the
            // positive edges of the vertex found
            for k in 0..rank {
                let x = Letter::new(k, true);
                let (Some(v1), Some(v2)) = (g1.target(u1, x), g2.target(u2, x)) else { continue };
                index.entry((v1, v2)).or_insert_with(|| {
                    pairs.push((v1, v2));
                    queue.push_back(pairs.len() as u32 - 1);
                    pairs.len() as u32 - 1
                });
            }
        }
        let raw = CosetGraph::from_edges(rank, pairs.len(), &edges)?;
        let (graph, map) = raw.canonical_map();
        let mut ordered = vec![(0, 0); pairs.len()];
        for (old, &new) in map.iter().enumerate() {
            ordered[new as usize] = pairs[old];
        }
        Ok(FiberProduct { graph, pairs: ordered })
    }
}

/// Core graph of `H₁ ∩ H₂`.
pub fn intersect(g1: &CosetGraph, g2: &CosetGraph) -> Result<CosetGraph> {
    Ok(FiberProduct::new(g1, g2)?.graph.core())
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CogrowthRow {
    pub i: usize,
    pub intersection: i64,
    pub left: i64,
    pub right: i64,
    pub holds: bool,
}

/// `Γ_{H₁∩H₂}(i) ≤ Γ_{H₁}(i)·Γ_{H₂}(i)` for `i = 0..=horizon`.
pub fn cogrowth_product_check(g1: &CosetGraph, g2: &CosetGraph, horizon: usize) -> Result<Vec<CogrowthRow>> {
    let h = intersect(g1, g2)?;
    let both = cogrowth(&h, horizon)?.integers()?;
    let left = cogrowth(g1, horizon)?.integers()?;
    let right = cogrowth(g2, horizon)?.integers()?;
    Ok((0..=horizon).map(|i| CogrowthRow { i, intersection: both[i], left: left[i], right: right[i], holds: both[i] <= left[i] * right[i] }).collect())
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BurnsRow {
    pub i: usize,
    pub rk: usize,
    pub rk_left: usize,
    pub rk_right: usize,
    /// `1 + 2(h-1)(k-1) - min(h, k)` with `h, k` the factor rank growths.
    pub literal_bound: i64,
    /// `1 + 2(h-1)(k-1) - min(h-1, k-1)`, or 0 when a factor is trivial.
    pub reference_bound: i64,
    pub literal_holds: bool,
    pub reference_holds: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BurnsReport {
    pub rows: Vec<BurnsRow>,
    /// Set when the enumeration budget stopped the rows early.
    pub partial: bool,
    pub rank_left: usize,
    pub rank_right: usize,
    pub rank_intersection: usize,
    /// The reference bound on the ranks of the subgroups themselves, when
    /// both are nontrivial.
    pub reference_bound: Option<i64>,
    pub reference_holds: bool,
}

impl BurnsReport {
    pub fn literal_failures(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| !r.literal_holds).map(|r| r.i).collect()
    }

    pub fn reference_failures(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| !r.reference_holds).map(|r| r.i).collect()
    }
}

fn literal_bound(h: i64, k: i64) -> i64 {
    1 + 2 * (h - 1) * (k - 1) - h.min(k)
}

/// Burns' bound; a trivial factor forces a trivial intersection.
pub fn reference_bound(h: usize, k: usize) -> i64 {
    if h == 0 || k == 0 {
        return 0;
    }
    let (h, k) = (h as i64 - 1, k as i64 - 1);
    1 + 2 * h * k - h.min(k)
}

/// Evaluates both forms of the bound on `rk` for `i = 1..=horizon`, and
/// the reference form once more on the ranks themselves.
pub fn burns_audit(g1: &CosetGraph, g2: &CosetGraph, horizon: usize, budget: u64) -> Result<BurnsReport> {
    let h = intersect(g1, g2)?;
    let mut rows = Vec::new();
    let mut partial = false;
    for i in 1..=horizon {
        let rks = (|| Ok::<_, Error>((rank_growth(&h, i, budget)?, rank_growth(g1, i, budget)?, rank_growth(g2, i, budget)?)))();
        let (rk, rk_left, rk_right) = match rks {
            Ok(v) => v,
            Err(Error::BudgetExceeded { .. }) => {
                partial = true;
                break;
            }
            Err(e) => return Err(e),
        };
        let literal = literal_bound(rk_left as i64, rk_right as i64);
        let reference = reference_bound(rk_left, rk_right);
        rows.push(BurnsRow {
            i,
            rk,
            rk_left,
            rk_right,
            literal_bound: literal,
            reference_bound: reference,
            literal_holds: rk as i64 <= literal,
            reference_holds: rk as i64 <= reference,
        });
    }
    let (rank_left, rank_right, rank_intersection) = (g1.cyclomatic_rank(), g2.cyclomatic_rank(), h.cyclomatic_rank());
    let whole = (rank_left > 0 && rank_right > 0).then(|| reference_bound(rank_left, rank_right));
    Ok(BurnsReport {
        rows,
        partial,
        rank_left,
        rank_right,
        rank_intersection,
        reference_bound: whole,
        reference_holds: whole.is_none_or(|b| rank_intersection as i64 <= b),
    })
}
