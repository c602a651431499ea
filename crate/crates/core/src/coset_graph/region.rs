use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use crate::error::{invalid, Error, Result};
use crate::words::{Letter, Word};

use super::{CosetGraph, CosetSpace, Folder};

/// What lies beyond the vertices of a [`Region`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Frontier {
    /// Every transition is present: the region is the whole space.
    Closed,
    /// Missing transitions lead into hanging trees; each missing slot is an
    /// edge to its own vertex outside the region.
    Open,
    /// The region is the ball of this radius in a larger space; vertices at
    /// this distance may have neighbours that were not explored.
    Truncated(usize),
}

/// A finite, materialised part of a coset graph around the base.
///
/// Vertices are numbered in ShortLex breadth-first order, so vertex ids
/// increase with the ShortLex order of [`Region::label`], and `label(v)` is
/// the ShortLex-least word reaching `v`.
#[derive(Clone, Debug)]
pub struct Region {
    graph: CosetGraph,
    dist: Vec<usize>,
    labels: Vec<Word>,
    frontier: Frontier,
}

impl Region {
    /// Breadth-first exploration of `space` to `radius`. Fails if a vertex
    /// closer than `radius` lacks a transition.
    pub fn explore<S: CosetSpace>(space: &S, radius: usize) -> Result<Region> {
        let rank = space.rank();
        let slots = 2 * rank;
        let mut index: HashMap<S::Vertex, u32> = HashMap::new();
        let mut verts = vec![space.base()];
        let mut dist = vec![0usize];
        let mut labels = vec![Word::identity(rank)];
        index.insert(space.base(), 0);
        let mut trans: Vec<Option<u32>> = Vec::new();
        let mut head = 0;
        while head < verts.len() {
            let u = head;
            head += 1;
            trans.extend(std::iter::repeat_n(None, slots));
            for s in 0..slots {
                let x = Letter::from_slot(s);
                let Some(v) = space.step(&verts[u], x) else {
                    if dist[u] < radius {
                        return invalid(format!("space has no {x}-transition at distance {}", dist[u]));
                    }
                    continue;
                };
                let id = match index.get(&v) {
                    Some(&id) => Some(id),
                    None if dist[u] < radius => {
                        let id = verts.len() as u32;
                        index.insert(v.clone(), id);
                        verts.push(v);
                        dist.push(dist[u] + 1);
                        let mut label = labels[u].clone();
                        label.push(x);
                        labels.push(label);
                        Some(id)
                    }
                    None => None,
                };
                trans[u * slots + s] = id;
            }
        }
        let graph = CosetGraph::from_raw(rank, trans);
        let frontier = if graph.is_complete() { Frontier::Closed } else { Frontier::Truncated(radius) };
        Ok(Region { graph, dist, labels, frontier })
    }

    /// The finite graph `g` itself, with missing transitions read as
    /// hanging trees of its completion.
    pub fn from_graph(g: &CosetGraph) -> Region {
        let graph = Folder::from_graph(g).finish(0).0;
        let dist: Vec<usize> = graph.distances().into_iter().map(|d| d.expect("connected")).collect();
        let mut labels = vec![Word::identity(g.rank()); graph.vertex_count()];
        // Canonical numbering is ShortLex BFS order, so the first discovery
        // of each vertex gives its least label.
        let mut seen = vec![false; graph.vertex_count()];
        seen[0] = true;
        for u in 0..graph.vertex_count() as u32 {
            for s in 0..2 * g.rank() {
                if let Some(t) = graph.target_slot(u, s) {
                    if !seen[t as usize] {
                        seen[t as usize] = true;
                        let mut l = labels[u as usize].clone();
                        l.push(Letter::from_slot(s));
                        labels[t as usize] = l;
                    }
                }
            }
        }
        let frontier = if graph.is_complete() { Frontier::Closed } else { Frontier::Open };
        Region { graph, dist, labels, frontier }
    }

    pub fn graph(&self) -> &CosetGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.graph.rank()
    }

    pub fn frontier(&self) -> Frontier {
        self.frontier
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn dist(&self, v: u32) -> usize {
        self.dist[v as usize]
    }

    pub fn label(&self, v: u32) -> &Word {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[Word] {
        &self.labels
    }

    pub fn target(&self, v: u32, x: Letter) -> Option<u32> {
        self.graph.target(v, x)
    }

    /// Largest radius `i` for which the ball of radius `i` is exact.
    pub fn exact_radius(&self) -> usize {
        match self.frontier {
            Frontier::Truncated(r) => r,
            _ => usize::MAX,
        }
    }

    /// Whether every neighbour of `v` in the ambient space is known.
    pub fn neighbours_known(&self, v: u32) -> bool {
        match self.frontier {
            Frontier::Truncated(r) => self.dist[v as usize] < r,
            _ => true,
        }
    }

    fn require_known(&self, s: &Subgraph) -> Result<()> {
        if let Frontier::Truncated(radius) = self.frontier {
            if let Some(&v) = s.vertices.iter().find(|&&v| !self.neighbours_known(v)) {
                return Err(Error::OutsideRegion { vertex: v, radius });
            }
        }
        Ok(())
    }

    /// Number of vertices at each distance from the base, up to the largest
    /// distance present. Hanging vertices of an open region are not counted.
    pub fn sphere_sizes(&self) -> Vec<u64> {
        let max = self.dist.iter().copied().max().unwrap_or(0);
        let mut counts = vec![0u64; max + 1];
        for &d in &self.dist {
            counts[d] += 1;
        }
        counts
    }

    /// Induced subgraph on the vertices within distance `i` of the base.
    /// Loops at included vertices are included.
    pub fn ball(&self, i: usize) -> Result<Subgraph> {
        if let Frontier::Truncated(r) = self.frontier {
            if i > r {
                return invalid(format!("ball radius {i} exceeds explored radius {r}"));
            }
        }
        Ok(self.induced((0..self.vertex_count() as u32).filter(|&v| self.dist[v as usize] <= i)))
    }

    /// Induced subgraph on a vertex set.
    pub fn induced(&self, vertices: impl IntoIterator<Item = u32>) -> Subgraph {
        let vertices: BTreeSet<u32> = vertices.into_iter().collect();
        let edges =
            self.graph.edges().filter(|(u, _, v)| vertices.contains(u) && vertices.contains(v)).map(|(from, label, to)| Edge { from, label, to }).collect();
        Subgraph { vertices, edges }
    }

    /// Subgraph generated by the given vertices and edges: endpoints of the
    /// edges are added.
    pub fn generated(&self, vertices: impl IntoIterator<Item = u32>, edges: impl IntoIterator<Item = Edge>) -> Result<Subgraph> {
        let mut vs: BTreeSet<u32> = vertices.into_iter().collect();
        let mut es = BTreeSet::new();
        for e in edges {
            if e.label.is_inverse() || self.graph.target(e.from, e.label) != Some(e.to) {
                return invalid(format!("edge {} -{}-> {} is not in the region", e.from, e.label, e.to));
            }
            vs.insert(e.from);
            vs.insert(e.to);
            es.insert(e);
        }
        if let Some(&v) = vs.iter().find(|&&v| v as usize >= self.vertex_count()) {
            return invalid(format!("vertex {v} is not in the region"));
        }
        Ok(Subgraph { vertices: vs, edges: es })
    }

    /// Edge used by slot `x` at `u`, if present.
    fn edge_at(&self, u: u32, x: Letter) -> Option<Edge> {
        let v = self.graph.target(u, x)?;
        Some(if x.is_inverse() { Edge { from: v, label: x.inverse(), to: u } } else { Edge { from: u, label: x, to: v } })
    }

    /// Vertices of `s` incident to an edge not in `s`.
    pub fn boundary(&self, s: &Subgraph) -> Result<BTreeSet<u32>> {
        self.require_known(s)?;
        Ok(s.vertices
            .iter()
            .copied()
            .filter(|&u| {
                (0..2 * self.rank()).any(|slot| match self.edge_at(u, Letter::from_slot(slot)) {
                    Some(e) => !s.edges.contains(&e),
                    None => true,
                })
            })
            .collect())
    }

    pub fn interior(&self, s: &Subgraph) -> Result<BTreeSet<u32>> {
        let b = self.boundary(s)?;
        Ok(s.vertices.difference(&b).copied().collect())
    }

    /// Vertices outside `s` adjacent to `s`.
    pub fn outer_boundary(&self, s: &Subgraph) -> Result<BTreeSet<OuterVertex>> {
        self.require_known(s)?;
        let mut out = BTreeSet::new();
        for &u in &s.vertices {
            for slot in 0..2 * self.rank() {
                let x = Letter::from_slot(slot);
                match self.graph.target(u, x) {
                    Some(v) if !s.vertices.contains(&v) => {
                        out.insert(OuterVertex::Vertex(v));
                    }
                    Some(_) => {}
                    None => {
                        out.insert(OuterVertex::Hanging { anchor: u, letter: x });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Edges not in `s` whose initial vertex, read along positive letters,
    /// lies in `s`.
    pub fn x_out_edges(&self, s: &Subgraph) -> Result<usize> {
        self.require_known(s)?;
        let mut count = 0;
        for &u in &s.vertices {
            for k in 0..self.rank() {
                let x = Letter::new(k, false);
                match self.edge_at(u, x) {
                    Some(e) if s.edges.contains(&e) => {}
                    _ => count += 1,
                }
            }
        }
        Ok(count)
    }

    /// Edges not in `s` with exactly one endpoint in `s`.
    pub fn all_out_edges(&self, s: &Subgraph) -> Result<usize> {
        self.require_known(s)?;
        let mut count = 0;
        for &u in &s.vertices {
            for slot in 0..2 * self.rank() {
                match self.graph.target(u, Letter::from_slot(slot)) {
                    Some(v) if s.vertices.contains(&v) => {}
                    _ => count += 1,
                }
            }
        }
        Ok(count)
    }
}

/// An edge, identified by its positive-letter orientation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Edge {
    pub from: u32,
    pub label: Letter,
    pub to: u32,
}

impl Ord for Edge {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.from, self.label.slot(), self.to).cmp(&(other.from, other.label.slot(), other.to))
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A vertex just outside a subgraph.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum OuterVertex {
    Vertex(u32),
    /// First vertex of the hanging tree entered from `anchor` along `letter`.
    Hanging {
        anchor: u32,
        letter: Letter,
    },
}

impl Ord for OuterVertex {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |o: &OuterVertex| match o {
            OuterVertex::Vertex(v) => (0u8, *v, 0usize),
            OuterVertex::Hanging { anchor, letter } => (1u8, *anchor, letter.slot()),
        };
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for OuterVertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite set of vertices and edges of a region whose edge endpoints are
/// included.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Subgraph {
    pub vertices: BTreeSet<u32>,
    pub edges: BTreeSet<Edge>,
}

impl Subgraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Connected components, each as a vertex set, ordered by least vertex.
    pub fn components(&self) -> Vec<BTreeSet<u32>> {
        let ids: Vec<u32> = self.vertices.iter().copied().collect();
        let pos: HashMap<u32, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, pos[&e.from]), find(&mut parent, pos[&e.to]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: std::collections::BTreeMap<usize, BTreeSet<u32>> = Default::default();
        for (i, &v) in ids.iter().enumerate() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().insert(v);
        }
        groups.into_values().collect()
    }

    /// Number of connected components.
    pub fn alpha(&self) -> usize {
        self.components().len()
    }

    /// Sum over components of `edges - vertices + 1`.
    pub fn cyclomatic_rank(&self) -> usize {
        self.edge_count() + self.alpha() - self.vertex_count()
    }
}
