//! Folded, base-pointed, edge-labelled graphs (Stallings automata) and the
//! regions, balls and subgraph counters built on top of them.
//!
//! A [`CosetGraph`] stores one transition per (vertex, signed letter) slot.
//! Transitions are involutive: `u --x--> v` exactly when `v --x⁻¹--> u`.
//! Vertex ids are dense, the base is vertex `0`, and graphs produced by
//! folding are numbered in ShortLex breadth-first order from the base, so
//! two folded graphs are isomorphic (preserving base and labels) exactly
//! when they are equal.

mod fold;
mod io;
mod region;
mod space;

use std::collections::VecDeque;

pub(crate) use fold::Folder;
pub use io::GraphJson;
pub use region::{Edge, Frontier, OuterVertex, Region, Subgraph};
pub use space::{AbelianQuotient, Completion, CompletionVertex, CosetSpace, GraphSpace, PermutationQuotient};

use crate::error::{invalid, Error, Result};
use crate::words::{Alphabet, Letter, Word};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CosetGraph {
    rank: usize,
    trans: Vec<Option<u32>>,
}

impl CosetGraph {
    /// Single vertex, no edges: the graph of the trivial subgroup.
    pub fn trivial(rank: usize) -> Self {
        CosetGraph { rank, trans: vec![None; 2 * rank] }
    }

    pub(crate) fn from_raw(rank: usize, trans: Vec<Option<u32>>) -> Self {
        debug_assert_eq!(trans.len() % (2 * rank), 0);
        CosetGraph { rank, trans }
    }

    /// Folds a wedge of loops, one per generator, at the base. Closed
    /// reduced paths at the base of the result spell exactly the subgroup
    /// generated by `generators`.
    pub fn from_generators(rank: usize, generators: &[Word]) -> Result<Self> {
        Alphabet::new(rank)?;
        let mut folder = Folder::new(rank);
        for g in generators {
            if g.rank() != rank {
                return Err(Error::AlphabetMismatch { left: rank, right: g.rank() });
            }
            folder.attach_loop(0, g);
        }
        Ok(folder.finish(0).0)
    }

    /// Schreier graph of a transitive permutation action on `0..m`, based
    /// at point `0`. `perms[k][p]` is the image of point `p` under generator
    /// `k`. Every vertex has all `2n` transitions, so the subgroup (the
    /// stabiliser of point `0`) has index `m`.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<Self> {
        let rank = perms.len();
        Alphabet::new(rank)?;
        let m = perms[0].len();
        if m == 0 {
            return invalid("permutations act on an empty set");
        }
        let mut trans = vec![None; m * 2 * rank];
        for (k, p) in perms.iter().enumerate() {
            if p.len() != m {
                return invalid("permutations of different degrees");
            }
            let mut seen = vec![false; m];
            for (src, &dst) in p.iter().enumerate() {
                if dst >= m || std::mem::replace(&mut seen[dst], true) {
                    return invalid(format!("generator {k} is not a permutation"));
                }
                trans[src * 2 * rank + 2 * k] = Some(dst as u32);
                trans[dst * 2 * rank + 2 * k + 1] = Some(src as u32);
            }
        }
        let g = CosetGraph { rank, trans };
        if g.distances().iter().any(|d| d.is_none()) {
            return Err(Error::Disconnected);
        }
        Ok(g.canonical())
    }

    /// Builds a graph from positive-letter arcs, validating determinism,
    /// connectivity and the base. Vertex ids are kept as given.
    pub fn from_edges(rank: usize, vertex_count: usize, edges: &[(u32, Letter, u32)]) -> Result<Self> {
        Alphabet::new(rank)?;
        if vertex_count == 0 {
            return invalid("graph needs at least the base vertex");
        }
        let slots = 2 * rank;
        let mut trans = vec![None; vertex_count * slots];
        for &(u, x, v) in edges {
            if x.is_inverse() || x.generator() >= rank {
                return invalid(format!("edge label {x} must be a positive letter of rank {rank}"));
            }
            if u as usize >= vertex_count || v as usize >= vertex_count {
                return invalid(format!("edge {u} -> {v} refers to a missing vertex"));
            }
            let (a, b) = (u as usize * slots + x.slot(), v as usize * slots + x.inverse().slot());
            if trans[a].is_some() || trans[b].is_some() {
                return invalid(format!("graph is not folded at edge {u} -{x}-> {v}"));
            }
            trans[a] = Some(v);
            trans[b] = Some(u);
        }
        let g = CosetGraph { rank, trans };
        if g.distances().iter().any(|d| d.is_none()) {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// Like [`CosetGraph::from_edges`], but arcs may clash: they are folded
    /// together, and only the component of vertex 0 is kept.
    pub fn fold_edges(rank: usize, vertex_count: usize, edges: &[(u32, Letter, u32)]) -> Result<Self> {
        Alphabet::new(rank)?;
        if vertex_count == 0 {
            return invalid("graph needs at least the base vertex");
        }
        let mut folder = Folder::new(rank);
        for _ in 1..vertex_count {
            folder.add_vertex();
        }
        for &(u, x, v) in edges {
            if x.generator() >= rank || u as usize >= vertex_count || v as usize >= vertex_count {
                return invalid(format!("edge {u} -{x}-> {v} does not fit rank {rank} on {vertex_count} vertices"));
            }
            folder.add_edge(u as usize, x, v as usize);
        }
        Ok(folder.finish(0).0)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.rank).expect("rank checked at construction")
    }

    pub fn base(&self) -> u32 {
        0
    }

    pub fn vertex_count(&self) -> usize {
        self.trans.len() / (2 * self.rank)
    }

    pub fn target(&self, v: u32, x: Letter) -> Option<u32> {
        self.target_slot(v, x.slot())
    }

    pub(crate) fn target_slot(&self, v: u32, slot: usize) -> Option<u32> {
        self.trans[v as usize * 2 * self.rank + slot]
    }

    /// Positive-letter arcs, ordered by `(from, label)`.
    pub fn edges(&self) -> impl Iterator<Item = (u32, Letter, u32)> + '_ {
        let n = self.rank;
        (0..self.vertex_count() as u32).flat_map(move |u| {
            (0..n).filter_map(move |k| {
                let x = Letter::new(k, false);
                self.target(u, x).map(|v| (u, x, v))
            })
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Incident edge-ends; a loop contributes two.
    pub fn degree(&self, v: u32) -> usize {
        (0..2 * self.rank).filter(|&s| self.target_slot(v, s).is_some()).count()
    }

    pub fn is_complete(&self) -> bool {
        self.trans.iter().all(Option::is_some)
    }

    /// The index of the subgroup when the graph is complete.
    pub fn finite_index(&self) -> Option<usize> {
        self.is_complete().then(|| self.vertex_count())
    }

    /// Rank of the fundamental group: `|E| - |V| + 1` (the graph is
    /// connected).
    pub fn cyclomatic_rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    /// Reads `w` from the base along existing transitions.
    pub fn trace(&self, w: &Word) -> Option<u32> {
        self.trace_from(self.base(), w)
    }

    pub fn trace_from(&self, start: u32, w: &Word) -> Option<u32> {
        w.letters().iter().try_fold(start, |v, &x| self.target(v, x))
    }

    /// Membership in the subgroup whose graph this is.
    pub fn accepts(&self, w: &Word) -> bool {
        w.rank() == self.rank && self.trace(w) == Some(self.base())
    }

    /// Breadth-first distance of each vertex from the base.
    pub fn distances(&self) -> Vec<Option<usize>> {
        self.distances_from(self.base())
    }

    pub fn distances_from(&self, root: u32) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[root as usize] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize].unwrap();
            for s in 0..2 * self.rank {
                if let Some(t) = self.target_slot(u, s) {
                    if dist[t as usize].is_none() {
                        dist[t as usize] = Some(du + 1);
                        queue.push_back(t);
                    }
                }
            }
        }
        dist
    }

    /// Largest distance from the base to a vertex.
    pub fn radius(&self) -> usize {
        self.distances().into_iter().flatten().max().unwrap_or(0)
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> usize {
        (0..self.vertex_count() as u32).map(|v| self.distances_from(v).into_iter().flatten().max().unwrap_or(0)).max().unwrap_or(0)
    }

    /// Renumbers vertices in ShortLex breadth-first order from the base.
    pub fn canonical(&self) -> CosetGraph {
        Folder::from_graph(self).finish(0).0
    }

    /// Canonical renumbering together with the new id of each old vertex.
    pub fn canonical_map(&self) -> (CosetGraph, Vec<u32>) {
        let (g, order) = Folder::from_graph(self).finish(0);
        let mut map = vec![0u32; self.vertex_count()];
        for (new, &old) in order.iter().enumerate() {
            map[old] = new as u32;
        }
        (g, map)
    }

    /// Repeatedly strips non-base vertices of degree one. The result keeps
    /// every simple circuit and the base.
    pub fn core(&self) -> CosetGraph {
        let nv = self.vertex_count();
        let mut deg: Vec<usize> = (0..nv as u32).map(|v| self.degree(v)).collect();
        let mut alive = vec![true; nv];
        let mut queue: VecDeque<u32> = (1..nv as u32).filter(|&v| deg[v as usize] <= 1).collect();
        while let Some(v) = queue.pop_front() {
            if !alive[v as usize] {
                continue;
            }
            alive[v as usize] = false;
            for s in 0..2 * self.rank {
                if let Some(t) = self.target_slot(v, s) {
                    if t != v && alive[t as usize] {
                        deg[t as usize] -= 1;
                        if t != 0 && deg[t as usize] <= 1 {
                            queue.push_back(t);
                        }
                    }
                }
            }
        }
        self.restrict(&alive)
    }

    /// Induced graph on the live vertices (which must contain the base and
    /// be connected), renumbered canonically.
    fn restrict(&self, alive: &[bool]) -> CosetGraph {
        let mut folder = Folder::new(self.rank);
        let mut id = vec![usize::MAX; self.vertex_count()];
        id[0] = 0;
        for v in 1..self.vertex_count() {
            if alive[v] {
                id[v] = folder.add_vertex();
            }
        }
        for (u, x, v) in self.edges() {
            if alive[u as usize] && alive[v as usize] {
                folder.add_edge(id[u as usize], x, id[v as usize]);
            }
        }
        folder.finish(0).0
    }

    /// Base-preserving, label-preserving isomorphism.
    pub fn is_isomorphic(&self, other: &CosetGraph) -> bool {
        self.rank == other.rank && self.canonical() == other.canonical()
    }

    /// Checks the structural invariants: involutive transitions and
    /// connectivity.
    pub fn validate(&self) -> Result<()> {
        for v in 0..self.vertex_count() as u32 {
            for s in 0..2 * self.rank {
                if let Some(t) = self.target_slot(v, s) {
                    let back = Letter::from_slot(s).inverse();
                    if self.target(t, back) != Some(v) {
                        return invalid(format!("transition {v} -{}-> {t} has no inverse", Letter::from_slot(s)));
                    }
                }
            }
        }
        if self.distances().iter().any(Option::is_none) {
            return Err(Error::Disconnected);
        }
        Ok(())
    }
}
