//! Generalized word problem in `G = ⟨X | R⟩` for `H = ⟨S⟩`, decided with a
//! growth oracle for `A = ⟨N, S⟩`, `N` the normal closure of `R` in `F`.
//!
//! The coset graph of `A` is built by folding: `S` at the base, and each
//! relator as a loop at every vertex near the base (a loop at the vertex
//! reached by `u` folds in `u·r·u⁻¹ ∈ N`). Vertices near the base are also
//! given all their edges, so the graph grows level by level. Folding more
//! elements of `A` only identifies vertices, so the ball of radius `i` in
//! the completed graph never has fewer vertices than the true one; once its
//! volume matches the oracle the ball is exact, and a word of length `i`
//! is in `A` exactly when it closes up at the base of that ball.

use serde::{Deserialize, Serialize};

use crate::coset_graph::{CosetGraph, Folder, Region};
use crate::error::{invalid, Result};
use crate::rank_formula::Half;
use crate::transversal::{Strategy, Transversal};
use crate::words::{Word, MAX_TEXT_RANK};

/// Default cap on folded words (and new tree vertices) per certified level.
pub const DEFAULT_GWP_BUDGET: u64 = 100_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum OracleKind {
    /// Ball volumes of the coset graph of `A`.
    Gamma,
    /// `r_A(i)`.
    #[serde(rename = "r")]
    R,
    /// `rk_A(i)`.
    #[serde(rename = "rk")]
    Rk,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Oracle {
    pub kind: OracleKind,
    pub values: Vec<Half>,
}

#[derive(Clone, Debug)]
pub struct GwpInstance {
    pub rank: usize,
    pub relators: Vec<Word>,
    pub subgroup: Vec<Word>,
    pub oracle: Oracle,
}

#[derive(Deserialize)]
struct OracleJson {
    kind: OracleKind,
    values: Vec<f64>,
}

#[derive(Deserialize)]
struct InstanceJson {
    rank: Option<usize>,
    relators: Vec<String>,
    subgroup: Vec<String>,
    oracle: OracleJson,
}

impl GwpInstance {
    pub fn new(rank: usize, relators: Vec<Word>, subgroup: Vec<Word>, oracle: Oracle) -> Result<Self> {
        if relators.iter().chain(&subgroup).any(|w| w.rank() != rank) {
            return invalid(format!("all words must be over rank {rank}"));
        }
        if oracle.kind != OracleKind::R && oracle.values.iter().any(|v| !v.is_integer()) {
            return invalid("oracle values must be integers");
        }
        if oracle.kind != OracleKind::R && oracle.values.windows(2).any(|w| w[0] > w[1]) {
            return invalid("oracle table must be non-decreasing");
        }
        Ok(GwpInstance { rank, relators, subgroup, oracle })
    }

    /// Reads `{"rank"?, "relators", "subgroup", "oracle": {"kind", "values"}}`.
    /// Without a rank, the largest generator mentioned decides it.
    pub fn from_json(text: &str) -> Result<Self> {
        let j: InstanceJson = serde_json::from_str(text)?;
        let rank = match j.rank {
            Some(r) => r,
            None => {
                let mut rank = 1;
                for s in j.relators.iter().chain(&j.subgroup) {
                    let w = Word::parse(MAX_TEXT_RANK, s)?;
                    rank = w.letters().iter().map(|x| x.generator() + 1).fold(rank, usize::max);
                }
                rank
            }
        };
        let parse = |list: &[String]| list.iter().map(|s| Word::parse(rank, s)).collect::<Result<Vec<_>>>();
        let values = j
            .oracle
            .values
            .iter()
            .map(|&v| {
                let d = v * 2.0;
                if d.fract() != 0.0 || d.abs() > 1e15 {
                    invalid(format!("oracle value {v} is not a multiple of one half"))
                } else {
                    Ok(Half::from_doubled(d as i64))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        GwpInstance::new(rank, parse(&j.relators)?, parse(&j.subgroup)?, Oracle { kind: j.oracle.kind, values })
    }
}

/// Folding construction of the coset graph of `⟨N, S⟩`.
#[derive(Clone, Debug)]
pub struct QuotientBuilder {
    relators: Vec<Word>,
    folder: Folder,
    work: u64,
}

impl QuotientBuilder {
    pub fn new(rank: usize, relators: &[Word], subgroup: &[Word]) -> Result<Self> {
        crate::words::Alphabet::new(rank)?;
        let mut folder = Folder::new(rank);
        for s in subgroup {
            folder.attach_loop(0, s);
        }
        // a loop for r at every vertex also covers its cyclic conjugates
        let relators = relators.iter().map(|r| r.cyclic_reduction().1).filter(|r| !r.is_identity()).collect();
        Ok(QuotientBuilder { relators, folder, work: subgroup.len() as u64 })
    }

    /// Relator loops attached plus tree vertices created so far.
    pub fn work(&self) -> u64 {
        self.work
    }

    pub fn max_relator_len(&self) -> usize {
        self.relators.iter().map(Word::len).max().unwrap_or(0)
    }

    /// Gives every vertex closer than `reach` all its edges, then attaches
    /// every relator at every vertex within `reach`. Stops early, returning
    /// `false`, once the total work reaches `limit`.
    pub fn round(&mut self, reach: usize, limit: u64) -> bool {
        let (g, order) = self.folder.finish(0);
        let dist = g.distances();
        for (id, &rep) in order.iter().enumerate() {
            if dist[id].is_some_and(|d| d < reach) {
                for x in self.folder.missing_slots(rep) {
                    if self.work >= limit {
                        return false;
                    }
                    let v = self.folder.add_vertex();
                    self.folder.add_edge(rep, x, v);
                    self.work += 1;
                }
            }
        }
        for (id, &rep) in order.iter().enumerate() {
            if dist[id].is_some_and(|d| d <= reach) {
                for r in &self.relators {
                    if self.work >= limit {
                        return false;
                    }
                    self.folder.attach_loop(rep, r);
                    self.work += 1;
                }
            }
        }
        true
    }

    pub fn graph(&mut self) -> CosetGraph {
        self.folder.finish(0).0
    }

    /// Whether the graph is complete and every relator closes at every
    /// vertex, in which case it is the whole (finite) coset graph.
    pub fn is_closed(&mut self) -> bool {
        let g = self.graph();
        g.is_complete() && (0..g.vertex_count() as u32).all(|v| self.relators.iter().all(|r| g.trace_from(v, r) == Some(v)))
    }

    /// Runs rounds at a fixed reach until the graph stops changing. Returns
    /// `false` if the work limit cut it short.
    pub fn saturate(&mut self, reach: usize, limit: u64) -> bool {
        let mut prev = self.graph();
        loop {
            if !self.round(reach, limit) {
                return false;
            }
            let g = self.graph();
            if g == prev {
                return true;
            }
            prev = g;
        }
    }
}

/// Coset graph of the normal closure of `relators`, grown one radius at a
/// time and saturated at each, out to `radius` plus the longest relator.
/// The flag is true when the graph closed up into a finite complete graph
/// on which every relator is a loop everywhere, which makes it exact;
/// otherwise the ball of radius `radius` is only a probe.
pub fn normal_quotient(rank: usize, relators: &[Word], radius: usize, budget: u64) -> Result<(CosetGraph, bool)> {
    let mut b = QuotientBuilder::new(rank, relators, &[])?;
    let reach = radius + 1 + b.max_relator_len();
    for r in 1..=reach {
        if !b.saturate(r, budget) {
            return Err(crate::Error::BudgetExceeded { needed: b.work() + 1, budget });
        }
        if b.is_closed() {
            return Ok((b.graph(), true));
        }
    }
    Ok((b.graph(), false))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Member,
    NonMember,
    Inconclusive,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GwpReport {
    pub word: String,
    pub decision: Decision,
    /// Ball volumes (or ball ranks, for an `rk` oracle) at each certified
    /// radius.
    pub certified: Vec<i64>,
    pub oracle: OracleKind,
    /// False when the stopping rule is the unproven `rk` reading.
    pub stopping_rule_proven: bool,
    pub work: u64,
}

/// Incremental solver: levels certified once serve every later query.
#[derive(Clone, Debug)]
pub struct GwpSolver {
    inst: GwpInstance,
    builder: QuotientBuilder,
    graph: CosetGraph,
    certified: Vec<i64>,
    budget: u64,
}

impl GwpSolver {
    pub fn new(inst: GwpInstance, budget: u64) -> Result<Self> {
        let mut builder = QuotientBuilder::new(inst.rank, &inst.relators, &inst.subgroup)?;
        let graph = builder.graph();
        Ok(GwpSolver { inst, builder, graph, certified: Vec::new(), budget })
    }

    pub fn graph(&self) -> &CosetGraph {
        &self.graph
    }

    pub fn certified(&self) -> &[i64] {
        &self.certified
    }

    /// Oracle target at `level`: a volume, or for `rk` the rank `rk(2i+1)`.
    fn target(&self, level: usize) -> Result<i64> {
        let v = &self.inst.oracle.values;
        let short = || invalid(format!("oracle table too short for radius {level}"));
        match self.inst.oracle.kind {
            OracleKind::Gamma => v.get(level).map_or_else(short, |x| x.to_integer()),
            OracleKind::Rk => v.get(2 * level + 1).map_or_else(short, |x| x.to_integer()),
            OracleKind::R => {
                // Γ(i+1) = 2 + (2n-1)Γ(i) - 2r(i)
                if v.len() < level {
                    return short();
                }
                let n = self.inst.rank as i64;
                Ok(v[..level].iter().fold(1i64, |big, r| 2 + (2 * n - 1) * big - r.doubled()))
            }
        }
    }

    fn statistic(&self, level: usize) -> Result<i64> {
        Ok(match self.inst.oracle.kind {
            OracleKind::Rk => Region::from_graph(&self.graph).ball(level)?.cyclomatic_rank() as i64,
            _ => {
                let t = Transversal::of_graph(&self.graph, Strategy::ShortLexBfs)?;
                t.sphere_sizes(level)?.iter().sum::<u64>() as i64
            }
        })
    }

    /// Certifies every radius up to `level`. `Ok(false)` means the budget
    /// ran out first.
    pub fn certify(&mut self, level: usize) -> Result<bool> {
        while self.certified.len() <= level {
            let i = self.certified.len();
            let target = self.target(i)?;
            let limit = self.builder.work().saturating_add(self.budget);
            let mut reach = i;
            loop {
                let stat = self.statistic(i)?;
                if stat == target {
                    break;
                }
                if stat < target && self.inst.oracle.kind != OracleKind::Rk {
                    return invalid(format!("oracle value {target} at radius {i} exceeds the volume {stat} of a covering ball"));
                }
                reach += 1;
                let finished = self.builder.round(reach, limit);
                self.graph = self.builder.graph();
                if !finished {
                    return Ok(false);
                }
            }
            self.certified.push(target);
        }
        Ok(true)
    }

    pub fn decide(&mut self, w: &Word) -> Result<GwpReport> {
        if w.rank() != self.inst.rank {
            return invalid(format!("word {w} is not over rank {}", self.inst.rank));
        }
        let decision = if self.certify(w.len())? {
            if self.graph.trace(w) == Some(0) {
                Decision::Member
            } else {
                Decision::NonMember
            }
        } else {
            Decision::Inconclusive
        };
        Ok(GwpReport {
            word: w.to_string(),
            decision,
            certified: self.certified.clone(),
            oracle: self.inst.oracle.kind,
            stopping_rule_proven: self.inst.oracle.kind != OracleKind::Rk,
            work: self.builder.work(),
        })
    }
}

/// One-shot decision with the default budget.
pub fn gwp_decide(inst: &GwpInstance, w: &Word) -> Result<GwpReport> {
    GwpSolver::new(inst.clone(), DEFAULT_GWP_BUDGET)?.decide(w)
}
