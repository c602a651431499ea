//! Growth, cogrowth and rank-growth series, the relations between them, and
//! finite-horizon probes of the growth preorder.

pub mod pathological;

use serde::Serialize;

pub use pathological::{build_pathological, constructed_growth, pathological_transversals, PathologicalGraph};

use crate::coset_graph::{CosetGraph, CosetSpace, Folder, Region};
use crate::error::{invalid, Error, Result};
use crate::rank_formula::{ball_expression_from_counts, Half};
use crate::transversal::{Strategy, Transversal};
use crate::words::{Letter, Word};

/// Default cap on the number of words a brute-force enumeration may trace.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    /// `γ(i)`: labels of length exactly `i`.
    Sphere,
    /// `Γ(i)`: labels of length at most `i`.
    Ball,
    /// `r(i) = 1 + (n-1)Γ(i) - ½γ(i+1)`.
    RankBound,
    /// `ρ(i)`: cyclomatic rank of the ball of radius `i`.
    BallRank,
    /// `rk(i)`: rank of the subgroup generated by members of length `≤ i`.
    RankGrowth,
    /// Number of subgroup elements of length at most `i`.
    ElementCount,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Bfs,
    Formula,
    BruteForce,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GrowthSeries {
    pub kind: SeriesKind,
    pub values: Vec<Half>,
    pub provenance: Vec<Provenance>,
}

impl GrowthSeries {
    fn uniform(kind: SeriesKind, values: Vec<Half>, how: Provenance) -> Self {
        let provenance = vec![how; values.len()];
        GrowthSeries { kind, values, provenance }
    }

    fn counts(kind: SeriesKind, values: Vec<i64>, how: Provenance) -> Self {
        GrowthSeries::uniform(kind, values.into_iter().map(Half::from_int).collect(), how)
    }

    /// The values as integers; fails on a half-integer entry.
    pub fn integers(&self) -> Result<Vec<i64>> {
        self.values.iter().map(|v| v.to_integer()).collect()
    }

    /// Largest index with a value.
    pub fn horizon(&self) -> usize {
        self.values.len().saturating_sub(1)
    }
}

/// `γ_T` and `Γ_T` of a transversal for `i = 0..=horizon`.
pub fn transversal_series(t: &Transversal, horizon: usize) -> Result<(GrowthSeries, GrowthSeries)> {
    let gamma: Vec<i64> = t.sphere_sizes(horizon)?.into_iter().map(|c| c as i64).collect();
    let big = cumulative(&gamma);
    Ok((GrowthSeries::counts(SeriesKind::Sphere, gamma, Provenance::Bfs), GrowthSeries::counts(SeriesKind::Ball, big, Provenance::Bfs)))
}

fn cumulative(gamma: &[i64]) -> Vec<i64> {
    gamma
        .iter()
        .scan(0i64, |acc, &g| {
            *acc += g;
            Some(*acc)
        })
        .collect()
}

/// Cogrowth of the subgroup whose graph is `g`: ball volumes in its
/// completed coset graph.
pub fn cogrowth(g: &CosetGraph, horizon: usize) -> Result<GrowthSeries> {
    let t = Transversal::of_graph(g, Strategy::ShortLexBfs)?;
    Ok(transversal_series(&t, horizon)?.1)
}

/// Cogrowth in an arbitrary complete space, by breadth-first search.
pub fn cogrowth_in<S: CosetSpace>(space: &S, horizon: usize) -> Result<GrowthSeries> {
    let t = Transversal::minimal(space, horizon)?;
    Ok(transversal_series(&t, horizon)?.1)
}

/// `r_T(i)` for `i = 0..=horizon`.
pub fn r_series(t: &Transversal, horizon: usize) -> Result<GrowthSeries> {
    let counts = t.sphere_sizes(horizon + 1)?;
    Ok(GrowthSeries::uniform(SeriesKind::RankBound, ball_expression_from_counts(t.rank(), &counts), Provenance::Formula))
}

/// Number of words a brute-force enumeration to length `i` is charged.
fn enumeration_cost(rank: usize, i: usize) -> u64 {
    (2 * rank as u64 - 1).saturating_pow(i as u32)
}

fn charge(rank: usize, i: usize, budget: u64) -> Result<()> {
    let needed = enumeration_cost(rank, i);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// Calls `found` with every nonempty reduced word of length at most `max`
/// that lies in the subgroup. Branches that leave a partial space are cut,
/// since a reduced word never returns from a missing transition.
fn for_each_member<S: CosetSpace>(space: &S, max: usize, found: &mut impl FnMut(&[Letter])) {
    fn walk<S: CosetSpace>(space: &S, v: S::Vertex, word: &mut Vec<Letter>, max: usize, found: &mut impl FnMut(&[Letter])) {
        if !word.is_empty() && v == space.base() {
            found(word);
        }
        if word.len() == max {
            return;
        }
        for s in 0..2 * space.rank() {
            let x = Letter::from_slot(s);
            if word.last() == Some(&x.inverse()) {
                continue;
            }
            if let Some(next) = space.step(&v, x) {
                word.push(x);
                walk(space, next, word, max, found);
                word.pop();
            }
        }
    }
    walk(space, space.base(), &mut Vec::with_capacity(max), max, found);
}

/// `rk(i)`: folds every subgroup element of length at most `i` and returns
/// the cyclomatic rank of the result.
pub fn rank_growth_in<S: CosetSpace>(space: &S, i: usize, budget: u64) -> Result<usize> {
    charge(space.rank(), i, budget)?;
    let rank = space.rank();
    let mut folder = Folder::new(rank);
    for_each_member(space, i, &mut |letters| {
        let w = Word::reduce(crate::words::Alphabet::new(rank).expect("rank checked"), letters.iter().copied()).expect("letters in range");
        folder.attach_loop(0, &w);
    });
    Ok(folder.finish(0).0.cyclomatic_rank())
}

/// `rk(i)` for the subgroup whose graph is `g`.
pub fn rank_growth(g: &CosetGraph, i: usize, budget: u64) -> Result<usize> {
    rank_growth_in(&crate::coset_graph::GraphSpace(g), i, budget)
}

/// Number of subgroup elements (identity included) of length at most `i`.
pub fn subgroup_element_count_in<S: CosetSpace>(space: &S, i: usize, budget: u64) -> Result<u64> {
    charge(space.rank(), i, budget)?;
    let mut count = 1u64;
    for_each_member(space, i, &mut |_| count += 1);
    Ok(count)
}

pub fn subgroup_element_count(g: &CosetGraph, i: usize, budget: u64) -> Result<u64> {
    subgroup_element_count_in(&crate::coset_graph::GraphSpace(g), i, budget)
}

/// `ρ(i)`: cyclomatic rank of the ball of radius `i` about the base.
pub fn rho_in<S: CosetSpace>(space: &S, i: usize) -> Result<usize> {
    Ok(Region::explore(space, i)?.ball(i)?.cyclomatic_rank())
}

/// `ρ(i)` for the subgroup whose graph is `g`. Hanging trees add no
/// circuits, so the ball is taken in `g` itself.
pub fn rho(g: &CosetGraph, i: usize) -> Result<usize> {
    Ok(Region::from_graph(g).ball(i)?.cyclomatic_rank())
}

/// One radius of [`relation_checks`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RelationRow {
    pub i: usize,
    pub rho: usize,
    pub rho_next: usize,
    pub r: Half,
    /// `rk(2i+1)`, absent when over budget.
    pub rk_odd: Option<usize>,
    /// `ρ(i) = rk(2i+1)`.
    pub odd_rank_growth: Option<bool>,
    /// `ρ(i) ≤ r(i) ≤ ρ(i+1)`.
    pub sandwich: bool,
    /// `r(i) - r(i-1) = ((2n-1)/2)γ(i) - ½γ(i+1)`, from `i = 1`.
    pub difference: Option<bool>,
    pub gamma_next: u64,
    pub all_out_edges: usize,
    pub x_out_edges: usize,
    /// `r(i) = ρ(i) + ½(out - γ(i+1))` with `out` counting every edge
    /// leaving the ball.
    pub excess_all_out: bool,
    /// The same identity with `out` counting positive-direction edges only.
    pub excess_x_out: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RelationReport {
    pub rows: Vec<RelationRow>,
    /// Some rank-growth values were skipped for budget.
    pub partial: bool,
}

impl RelationReport {
    pub fn odd_rank_growth_holds(&self) -> bool {
        self.rows.iter().all(|r| r.odd_rank_growth != Some(false))
    }

    pub fn sandwich_holds(&self) -> bool {
        self.rows.iter().all(|r| r.sandwich)
    }

    pub fn difference_holds(&self) -> bool {
        self.rows.iter().all(|r| r.difference != Some(false))
    }
}

/// Evaluates the relations between `ρ`, `r`, `rk` and the boundary edge
/// counts for `i = 0..=horizon`, over the minimal transversal of `space`.
pub fn relation_checks<S: CosetSpace>(space: &S, horizon: usize, budget: u64) -> Result<RelationReport> {
    let n = space.rank() as i64;
    let region = Region::explore(space, horizon + 1)?;
    let t = Transversal::new(region.clone(), Strategy::ShortLexBfs)?;
    let gamma = t.sphere_sizes(horizon + 1)?;
    let r = ball_expression_from_counts(space.rank(), &gamma);
    let mut rows = Vec::with_capacity(horizon + 1);
    let mut partial = false;
    for i in 0..=horizon {
        let ball = region.ball(i)?;
        let rho = ball.cyclomatic_rank();
        let rho_next = region.ball(i + 1)?.cyclomatic_rank();
        let rk_odd = match rank_growth_in(space, 2 * i + 1, budget) {
            Ok(v) => Some(v),
            Err(Error::BudgetExceeded { .. }) => {
                partial = true;
                None
            }
            Err(e) => return Err(e),
        };
        let difference = (i >= 1).then(|| (r[i] - r[i - 1]).doubled() == (2 * n - 1) * gamma[i] as i64 - gamma[i + 1] as i64);
        let all_out = region.all_out_edges(&ball)?;
        let x_out = region.x_out_edges(&ball)?;
        let excess = |out: usize| r[i].doubled() == 2 * rho as i64 + out as i64 - gamma[i + 1] as i64;
        rows.push(RelationRow {
            i,
            rho,
            rho_next,
            r: r[i],
            rk_odd,
            odd_rank_growth: rk_odd.map(|k| k == rho),
            sandwich: Half::from_int(rho as i64) <= r[i] && r[i] <= Half::from_int(rho_next as i64),
            difference,
            gamma_next: gamma[i + 1],
            all_out_edges: all_out,
            x_out_edges: x_out,
            excess_all_out: excess(all_out),
            excess_x_out: excess(x_out),
        });
    }
    Ok(RelationReport { rows, partial })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct WitnessBoundRow {
    pub i: usize,
    pub ball_minimal: i64,
    pub r_minimal: Half,
    pub holds_minimal: bool,
    pub ball_dfs: i64,
    pub r_dfs: Half,
    pub holds_dfs: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct WitnessBoundReport {
    pub witness: String,
    pub m: usize,
    pub rows: Vec<WitnessBoundRow>,
}

impl WitnessBoundReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds_minimal && r.holds_dfs)
    }
}

/// Checks `Γ_T(i) ≤ m·r_T(i+m)` for `i = 0..=horizon`, where `m` is the
/// length of a nontrivial witness `h` of a normal subgroup contained in
/// the subgroup, for the minimal transversal and a depth-first one.
///
/// Normality of `⟨h⟩^F` inside the subgroup is checked on the explored
/// region: `h` must close up at every vertex whose `h`-walk stays inside.
pub fn witness_bound_check<S: CosetSpace>(space: &S, h: &Word, horizon: usize) -> Result<WitnessBoundReport> {
    if h.is_identity() {
        return invalid("witness must be nontrivial");
    }
    if !space.contains(h) {
        return invalid(format!("witness {h} is not in the subgroup"));
    }
    let m = h.len();
    let radius = horizon + m + 1;
    let region = Region::explore(space, radius)?;
    let g = region.graph();
    for v in 0..region.vertex_count() as u32 {
        if region.dist(v) + m <= radius && g.trace_from(v, h) != Some(v) {
            return Err(Error::Precondition(format!("{h} does not close at coset {}", region.label(v))));
        }
    }
    let minimal = Transversal::new(region.clone(), Strategy::ShortLexBfs)?;
    let dfs = Transversal::new(region, Strategy::Dfs)?;
    let series = |t: &Transversal| -> Result<(Vec<i64>, Vec<Half>)> {
        let counts = t.sphere_sizes(radius)?;
        let big = cumulative(&counts.iter().map(|&c| c as i64).collect::<Vec<_>>());
        Ok((big, ball_expression_from_counts(t.rank(), &counts)))
    };
    let (ball_min, r_min) = series(&minimal)?;
    let (ball_dfs, r_dfs) = series(&dfs)?;
    let mm = m as i64;
    let rows = (0..=horizon)
        .map(|i| WitnessBoundRow {
            i,
            ball_minimal: ball_min[i],
            r_minimal: r_min[i + m],
            holds_minimal: Half::from_int(ball_min[i]) <= r_min[i + m] * mm,
            ball_dfs: ball_dfs[i],
            r_dfs: r_dfs[i + m],
            holds_dfs: Half::from_int(ball_dfs[i]) <= r_dfs[i + m] * mm,
        })
        .collect();
    Ok(WitnessBoundReport { witness: h.to_string(), m, rows })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    LeftBelow,
    RightBelow,
    Equivalent,
    Incomparable,
}

/// Result of a finite-horizon probe of the growth preorder. This is not a
/// decision: it only reports what held on the tested window.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ProbeResult {
    pub window: usize,
    /// Least `c` with `f(i) ≤ c·g(c·i)` on the window.
    pub left_constant: Option<i64>,
    /// Least `c` with `g(i) ≤ c·f(c·i)` on the window.
    pub right_constant: Option<i64>,
    pub verdict: Comparison,
}

impl ProbeResult {
    pub fn describe(&self) -> &'static str {
        match self.verdict {
            Comparison::LeftBelow => "f below g on the window (not conversely)",
            Comparison::RightBelow => "g below f on the window (not conversely)",
            Comparison::Equivalent => "equivalent on the window",
            Comparison::Incomparable => "incomparable at horizon",
        }
    }
}

/// Probes `f ⪯ g` and `g ⪯ f` for constants `c ≤ c_max`, on the common
/// window of both series. Arguments `c·i` beyond the window are clamped to
/// its end.
pub fn equivalence_probe(f: &[i64], g: &[i64], c_max: i64) -> ProbeResult {
    let len = f.len().min(g.len());
    let window = len.saturating_sub(1);
    let below = |a: &[i64], b: &[i64]| (1..=c_max).find(|&c| (0..len).all(|i| a[i] <= c * b[(c as usize * i).min(window)]));
    let left = below(f, g);
    let right = below(g, f);
    let verdict = match (left, right) {
        (Some(_), Some(_)) => Comparison::Equivalent,
        (Some(_), None) => Comparison::LeftBelow,
        (None, Some(_)) => Comparison::RightBelow,
        (None, None) => Comparison::Incomparable,
    };
    ProbeResult { window, left_constant: left, right_constant: right, verdict }
}

/// `r(i) = 1 + ((2n-1)/2)Γ(i) - ½Γ(i+1)`, from cumulative counts alone.
pub fn r_from_ball_sizes(rank: usize, big: &[i64]) -> Vec<Half> {
    let n = rank as i64;
    big.windows(2).map(|w| Half::from_doubled(2 + (2 * n - 1) * w[0] - w[1])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset_graph::{AbelianQuotient, Completion, PermutationQuotient};

    fn graph(gens: &str) -> CosetGraph {
        CosetGraph::from_generators(2, &Word::parse_list(2, gens).unwrap()).unwrap()
    }

    #[test]
    fn trivial_transversal_series() {
        let t = Transversal::of_graph(&graph("a,b"), Strategy::ShortLexBfs).unwrap();
        let (gamma, big) = transversal_series(&t, 4).unwrap();
        assert_eq!(gamma.integers().unwrap(), vec![1, 0, 0, 0, 0]);
        assert_eq!(big.integers().unwrap(), vec![1; 5]);
    }

    #[test]
    fn cogrowth_examples() {
        assert_eq!(cogrowth(&graph("aa,ab,ba"), 4).unwrap().integers().unwrap(), vec![1, 2, 2, 2, 2]);
        assert_eq!(cogrowth(&graph("a"), 4).unwrap().integers().unwrap(), vec![1, 3, 9, 27, 81]);
        let grid = cogrowth_in(&AbelianQuotient::commutator(2), 5).unwrap();
        assert_eq!(grid.integers().unwrap(), (0..=5).map(|i| 2 * i * i + 2 * i + 1).collect::<Vec<i64>>());
    }

    #[test]
    fn r_series_examples() {
        let t = Transversal::of_graph(&graph("a"), Strategy::ShortLexBfs).unwrap();
        assert_eq!(r_series(&t, 4).unwrap().integers().unwrap(), vec![1; 5]);
        let t = Transversal::of_graph(&graph("aa,ab,ba"), Strategy::ShortLexBfs).unwrap();
        assert_eq!(r_series(&t, 3).unwrap().values, vec![Half::from_doubled(3), Half::from_int(3), Half::from_int(3), Half::from_int(3)]);
    }

    #[test]
    fn rank_growth_examples() {
        assert_eq!(rank_growth(&graph("aa,ab,ba"), 0, DEFAULT_BUDGET).unwrap(), 0);
        assert_eq!(rank_growth(&graph("aa,ab,ba"), 2, DEFAULT_BUDGET).unwrap(), 3);
        let z2 = AbelianQuotient::commutator(2);
        assert_eq!(rank_growth_in(&z2, 3, DEFAULT_BUDGET).unwrap(), 0);
        assert!(matches!(rank_growth_in(&z2, 13, DEFAULT_BUDGET), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn element_counts() {
        assert_eq!(subgroup_element_count(&graph("aa,ab,ba"), 0, DEFAULT_BUDGET).unwrap(), 1);
        assert_eq!(subgroup_element_count(&graph("aa,ab,ba"), 2, DEFAULT_BUDGET).unwrap(), 13);
        assert_eq!(subgroup_element_count_in(&AbelianQuotient::commutator(2), 4, DEFAULT_BUDGET).unwrap(), 9);
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(&graph("a,b"), 0).unwrap(), 2);
        let z2 = AbelianQuotient::commutator(2);
        assert_eq!(rho_in(&z2, 0).unwrap(), 0);
        assert_eq!(rho_in(&z2, 1).unwrap(), 0);
        assert_eq!(rho_in(&z2, 2).unwrap(), 4);
    }

    #[test]
    fn grid_excess_identity_needs_all_out_edges() {
        let report = relation_checks(&AbelianQuotient::commutator(2), 2, DEFAULT_BUDGET).unwrap();
        let row = &report.rows[1];
        assert_eq!((row.r, row.rho, row.gamma_next), (Half::from_int(2), 0, 8));
        assert_eq!((row.all_out_edges, row.x_out_edges), (12, 6));
        assert!(row.excess_all_out);
        assert!(!row.excess_x_out);
        assert!(report.sandwich_holds() && report.difference_holds() && report.odd_rank_growth_holds());
    }

    #[test]
    fn relations_on_even_length_subgroup() {
        let c = Completion::new(&graph("aa,ab,ba"));
        let report = relation_checks(&c, 2, DEFAULT_BUDGET).unwrap();
        assert!(!report.partial);
        assert!(report.odd_rank_growth_holds());
    }

    #[test]
    fn witness_bound_instances() {
        let z2 = AbelianQuotient::commutator(2);
        let report = witness_bound_check(&z2, &Word::parse(2, "abAB").unwrap(), 6).unwrap();
        assert!(report.holds());
        let parity = PermutationQuotient::new(vec![vec![1, 0], vec![1, 0]]).unwrap();
        let report = witness_bound_check(&parity, &Word::parse(2, "aa").unwrap(), 4).unwrap();
        assert!(report.holds());
        assert_eq!(report.rows[3].ball_minimal, 2);
        assert_eq!(report.rows[3].r_minimal, Half::from_int(3));
        // ⟨a⟩ is not normal: its generator fails to close at the coset of b
        let c = Completion::new(&graph("a"));
        assert!(matches!(witness_bound_check(&c, &Word::parse(2, "a").unwrap(), 2), Err(Error::Precondition(_))));
        assert!(witness_bound_check(&z2, &Word::parse(2, "ab").unwrap(), 2).is_err());
    }

    #[test]
    fn probe_examples() {
        let f: Vec<i64> = (0..12).map(|i| i + 1).collect();
        let g: Vec<i64> = (0..12).map(|i| 3i64.pow(i as u32)).collect();
        let p = equivalence_probe(&f, &g, 4);
        assert_eq!(p.verdict, Comparison::LeftBelow);
        assert_eq!(p.left_constant, Some(1));
        let same = equivalence_probe(&f, &f, 4);
        assert_eq!((same.verdict, same.left_constant), (Comparison::Equivalent, Some(1)));
    }

    #[test]
    fn r_from_ball_sizes_matches() {
        let big = [1, 5, 13, 25];
        assert_eq!(r_from_ball_sizes(2, &big), [0, 2, 8].map(Half::from_int));
    }
}
