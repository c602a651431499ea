//! The rank of a subgroup read off finite pieces of a Schreier transversal.
//!
//! Every expression here has half-integer terms and is evaluated exactly
//! on doubled integers (see [`Half`]). Values away from the limit need not
//! be integers: on a finite graph the tree ball of radius 0 already gives
//! `n - ½γ(1)`, which is fractional whenever `γ(1)` is odd.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Serialize, Serializer};

use crate::coset_graph::{Edge, Frontier, Subgraph};
use crate::error::{invalid, Error, Result};
use crate::transversal::Transversal;

/// An exact multiple of one half, stored doubled.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Half(i64);

impl Half {
    pub fn from_doubled(doubled: i64) -> Self {
        Half(doubled)
    }

    pub fn from_int(k: i64) -> Self {
        Half(2 * k)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// The value as an integer; a parity error if it is not one.
    pub fn to_integer(self) -> Result<i64> {
        if self.is_integer() {
            Ok(self.0 / 2)
        } else {
            Err(Error::Parity(self.0))
        }
    }
}

impl From<i64> for Half {
    fn from(k: i64) -> Self {
        Half::from_int(k)
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, o: Half) -> Half {
        Half(self.0 + o.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, o: Half) -> Half {
        Half(self.0 - o.0)
    }
}

impl Mul<i64> for Half {
    type Output = Half;
    fn mul(self, k: i64) -> Half {
        Half(self.0 * k)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            let sign = if self.0 < 0 { "-" } else { "" };
            write!(f, "{sign}{}.5", self.0.abs() / 2)
        }
    }
}

impl Serialize for Half {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_integer() {
            s.serialize_i64(self.0 / 2)
        } else {
            s.serialize_f64(self.0 as f64 / 2.0)
        }
    }
}

fn check_selection(t: &Transversal, sel: &Subgraph) -> Result<()> {
    if let Some(e) = sel.edges.iter().find(|e| !t.is_tree_edge(e)) {
        return invalid(format!("edge {} -{}-> {} is not a tree edge", e.from, e.label, e.to));
    }
    if let Some(&v) = sel.vertices.iter().find(|&&v| v as usize >= t.region().vertex_count()) {
        return invalid(format!("vertex {v} is not in the region"));
    }
    if let Some(&v) = sel.vertices.iter().find(|&&v| !t.region().neighbours_known(v)) {
        return Err(Error::OutsideRegion { vertex: v, radius: t.region().exact_radius() });
    }
    Ok(())
}

/// Sum over the components of `sel` of the size of their outer boundary
/// in the tree. In a tree each outer vertex of a component is reached by a
/// single edge, so this counts tree edge-ends leaving the components.
fn tree_outer_boundary_total(t: &Transversal, sel: &Subgraph) -> usize {
    let ends: usize = sel.vertices.iter().map(|&v| t.tree_degree(v)).sum();
    ends - 2 * sel.edges.len()
}

/// `α + (n-1)|V| - ½ Σ_j |∂_out T_j|` over the components `T_j` of a
/// finite subforest of the transversal, outer boundaries taken in the tree.
pub fn forest_expression(t: &Transversal, sel: &Subgraph) -> Result<Half> {
    check_selection(t, sel)?;
    let n = t.rank() as i64;
    let doubled = 2 * sel.alpha() as i64 + 2 * (n - 1) * sel.vertex_count() as i64 - tree_outer_boundary_total(t, sel) as i64;
    Ok(Half(doubled))
}

/// The subgraph of the tree on the labels of length at most `i`. Fails if
/// some of those labels lie in a hanging tree or beyond the explored
/// radius.
pub fn tree_ball(t: &Transversal, i: usize) -> Result<Subgraph> {
    let region = t.region();
    if i >= region.exact_radius() {
        return invalid(format!("tree ball of radius {i} needs the region explored past radius {i}"));
    }
    if region.frontier() == Frontier::Open {
        let hanging = (0..region.vertex_count() as u32).any(|v| t.depth(v) < i && region.graph().degree(v) < 2 * t.rank());
        if hanging {
            return invalid(format!("tree ball of radius {i} reaches into a hanging tree"));
        }
    }
    let vertices: BTreeSet<u32> = (0..region.vertex_count() as u32).filter(|&v| t.depth(v) <= i).collect();
    let edges = t.tree_edges().iter().filter(|e| vertices.contains(&e.from) && vertices.contains(&e.to)).copied().collect();
    Ok(Subgraph { vertices, edges })
}

/// `r_T(i) = 1 + (n-1)Γ_T(i) - ½γ_T(i+1)`.
pub fn ball_expression(t: &Transversal, i: usize) -> Result<Half> {
    let counts = t.sphere_sizes(i + 1)?;
    Ok(ball_expression_from_counts(t.rank(), &counts)[i])
}

/// `r(i)` for every `i` with `γ(i+1)` available in `gamma`.
pub fn ball_expression_from_counts(rank: usize, gamma: &[u64]) -> Vec<Half> {
    let n = rank as i64;
    let mut out = Vec::with_capacity(gamma.len().saturating_sub(1));
    let mut total = 0i64;
    for i in 0..gamma.len().saturating_sub(1) {
        total += gamma[i] as i64;
        out.push(Half(2 + 2 * (n - 1) * total - gamma[i + 1] as i64));
    }
    out
}

/// `α - δ/2 + (n-1)|V| - ((2n-1)/2)|∂T|` for a selection whose
/// components are balls of the tree; `δ` counts single-vertex components
/// and `∂` is the boundary inside the tree. Evaluated as written, so it
/// can be a half-integer.
pub fn ball_union_expression(t: &Transversal, sel: &Subgraph) -> Result<Half> {
    check_selection(t, sel)?;
    let n = t.rank() as i64;
    let comps = sel.components();
    let delta =
        if t.region().frontier() == Frontier::Closed && t.region().vertex_count() == 1 { 0 } else { comps.iter().filter(|c| c.len() == 1).count() as i64 };
    let boundary = sel
        .vertices
        .iter()
        .filter(|&&v| {
            let inside = sel.edges.iter().filter(|e| e.from == v || e.to == v).count();
            t.tree_degree(v) > inside
        })
        .count() as i64;
    let doubled = 2 * comps.len() as i64 - delta + 2 * (n - 1) * sel.vertex_count() as i64 - (2 * n - 1) * boundary;
    Ok(Half(doubled))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// Constant over the trailing window.
    Stabilized { rank: Half },
    /// Still changing at the horizon.
    Unbounded,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RankEstimate {
    pub values: Vec<Half>,
    pub window: usize,
    pub verdict: Verdict,
}

impl RankEstimate {
    pub fn verdict_line(&self) -> String {
        match self.verdict {
            Verdict::Stabilized { rank } => format!("stabilized at {rank}"),
            Verdict::Unbounded => "nondecreasing, unbounded at horizon".to_string(),
        }
    }
}

/// The expression over concentric tree balls of radius `0..=horizon`.
///
/// The verdict is a heuristic: the true statement is a limit. The sequence
/// counts as stabilized when its last `max(3, diameter)` values agree,
/// where the diameter is that of the explored graph when it is a whole
/// core and 0 for truncated regions.
pub fn rank_estimate(t: &Transversal, horizon: usize) -> Result<RankEstimate> {
    let counts = t.sphere_sizes(horizon + 1)?;
    let values = ball_expression_from_counts(t.rank(), &counts);
    let diameter = match t.region().frontier() {
        Frontier::Truncated(_) => 0,
        _ => t.region().graph().diameter(),
    };
    let window = diameter.max(3);
    let verdict = if values.len() >= window && values[values.len() - window..].windows(2).all(|p| p[0] == p[1]) {
        Verdict::Stabilized { rank: *values.last().unwrap() }
    } else {
        Verdict::Unbounded
    };
    Ok(RankEstimate { values, window, verdict })
}

/// One component of a selection, checked against the edge count used in
/// the proof of the generalized rank formula: the positive-direction edges
/// leaving the induced subgraph should number half the tree outer
/// boundary.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct EdgeIdentityRow {
    pub vertices: usize,
    pub x_out_edges: usize,
    pub tree_outer_boundary: usize,
    pub holds: bool,
}

pub fn edge_identity_report(t: &Transversal, sel: &Subgraph) -> Result<Vec<EdgeIdentityRow>> {
    check_selection(t, sel)?;
    let mut rows = Vec::new();
    for comp in sel.components() {
        let edges: BTreeSet<Edge> = sel.edges.iter().filter(|e| comp.contains(&e.from)).copied().collect();
        let piece = Subgraph { vertices: comp.clone(), edges };
        let outer = tree_outer_boundary_total(t, &piece);
        let x_out = t.region().x_out_edges(&t.region().induced(comp))?;
        rows.push(EdgeIdentityRow { vertices: piece.vertex_count(), x_out_edges: x_out, tree_outer_boundary: outer, holds: 2 * x_out == outer });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset_graph::{AbelianQuotient, CosetGraph};
    use crate::transversal::Strategy;
    use crate::words::Word;

    fn graph(rank: usize, gens: &str) -> CosetGraph {
        CosetGraph::from_generators(rank, &Word::parse_list(rank, gens).unwrap()).unwrap()
    }

    fn whole(t: &Transversal) -> Subgraph {
        Subgraph { vertices: (0..t.region().vertex_count() as u32).collect(), edges: t.tree_edges().clone() }
    }

    #[test]
    fn finite_index_gives_schreier_formula() {
        let t = Transversal::of_graph(&graph(2, "aa,ab,ba"), Strategy::ShortLexBfs).unwrap();
        assert_eq!(forest_expression(&t, &whole(&t)).unwrap(), Half::from_int(3));
        let t = Transversal::of_graph(&graph(3, "a,b,c"), Strategy::Dfs).unwrap();
        assert_eq!(forest_expression(&t, &whole(&t)).unwrap(), Half::from_int(3));
    }

    #[test]
    fn root_of_whole_group() {
        let t = Transversal::of_graph(&graph(2, "a,b"), Strategy::ShortLexBfs).unwrap();
        let root = Subgraph { vertices: [0].into(), edges: BTreeSet::new() };
        assert_eq!(forest_expression(&t, &root).unwrap(), Half::from_int(2));
        assert_eq!(ball_union_expression(&t, &root).unwrap(), Half::from_int(2));
    }

    #[test]
    fn grid_tree_balls() {
        let t = Transversal::minimal(&AbelianQuotient::commutator(2), 6).unwrap();
        for i in 0..5 {
            let ball = tree_ball(&t, i).unwrap();
            let expected = Half::from_int(2 * (i * i) as i64);
            assert_eq!(forest_expression(&t, &ball).unwrap(), expected);
            assert_eq!(ball_expression(&t, i).unwrap(), expected);
        }
        assert!(tree_ball(&t, 6).is_err());
    }

    #[test]
    fn single_vertex_ball_in_infinite_tree() {
        let t = Transversal::minimal(&AbelianQuotient::commutator(2), 2).unwrap();
        let lone = Subgraph { vertices: [3].into(), edges: BTreeSet::new() };
        assert_eq!(ball_union_expression(&t, &lone).unwrap(), Half::from_int(0));
    }

    #[test]
    fn cyclic_subgroup_is_rank_one() {
        let t = Transversal::of_graph(&graph(2, "a"), Strategy::ShortLexBfs).unwrap();
        for i in 0..8 {
            assert_eq!(ball_expression(&t, i).unwrap(), Half::from_int(1));
        }
        let est = rank_estimate(&t, 6).unwrap();
        assert_eq!(est.verdict, Verdict::Stabilized { rank: Half::from_int(1) });
    }

    #[test]
    fn small_balls_can_be_fractional() {
        let t = Transversal::of_graph(&graph(2, "aa,ab,ba"), Strategy::ShortLexBfs).unwrap();
        let root = tree_ball(&t, 0).unwrap();
        assert_eq!(forest_expression(&t, &root).unwrap(), Half::from_doubled(3));
        assert_eq!(ball_expression(&t, 0).unwrap().to_string(), "1.5");
        assert_eq!(ball_expression(&t, 1).unwrap(), Half::from_int(3));
        assert!(Half::from_doubled(3).to_integer().is_err());
        assert_eq!(Half::from_doubled(-3).to_string(), "-1.5");
    }

    #[test]
    fn non_tree_edge_rejected() {
        let t = Transversal::of_graph(&graph(2, "aa,ab,ba"), Strategy::ShortLexBfs).unwrap();
        let mut sel = whole(&t);
        sel.edges.insert(Edge { from: 0, label: crate::Letter::from_slot(2), to: 1 });
        assert!(forest_expression(&t, &sel).is_err());
    }

    #[test]
    fn grid_estimate_is_unbounded() {
        let t = Transversal::minimal(&AbelianQuotient::commutator(2), 8).unwrap();
        let est = rank_estimate(&t, 6).unwrap();
        assert_eq!(est.values, [0, 2, 8, 18, 32, 50, 72].map(Half::from_int));
        assert_eq!(est.verdict, Verdict::Unbounded);
        assert_eq!(est.verdict_line(), "nondecreasing, unbounded at horizon");
    }

    #[test]
    fn edge_identity_report_counts() {
        let t = Transversal::of_graph(&graph(2, "aa,ab,ba"), Strategy::ShortLexBfs).unwrap();
        let rows = edge_identity_report(&t, &whole(&t)).unwrap();
        assert_eq!(rows, vec![EdgeIdentityRow { vertices: 2, x_out_edges: 0, tree_outer_boundary: 0, holds: true }]);
        let t = Transversal::of_graph(&graph(2, "a"), Strategy::ShortLexBfs).unwrap();
        let rows = edge_identity_report(&t, &whole(&t)).unwrap();
        assert_eq!((rows[0].x_out_edges, rows[0].tree_outer_boundary), (1, 2));
    }
}
