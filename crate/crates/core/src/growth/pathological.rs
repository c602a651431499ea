//! A subgroup of F₂ whose coset graph has a linear spanning tree and an
//! exponentially growing one.
//!
//! The graph starts with a circuit of length `c` at the base. Step `k`
//! adds a path of length `2kc` with fresh interior vertices, starting at
//! the second-to-last vertex of the previous path and ending at a vertex of
//! degree below 4 closest to the base. Cutting the last edge of every path
//! leaves a single long path; cutting the middle edge instead leaves a tree
//! that branches everywhere.

use serde::Serialize;

use crate::coset_graph::{CosetGraph, Edge, Region};
use crate::error::{invalid, Error, Result};
use crate::transversal::{Strategy, Transversal};
use crate::words::Letter;

const SLOTS: usize = 4;

#[derive(Clone, Debug, Serialize)]
pub struct PathologicalGraph {
    #[serde(skip)]
    pub graph: CosetGraph,
    pub c: usize,
    pub steps: usize,
    /// Vertex sequence of each path, in canonical ids.
    pub paths: Vec<Vec<u32>>,
    /// Letter of each path edge, read along the path.
    #[serde(skip)]
    pub letters: Vec<Vec<Letter>>,
    /// How many vertices tied for the terminal of each path after the first.
    pub terminal_ties: Vec<usize>,
}

struct Builder {
    adj: Vec<[Option<u32>; SLOTS]>,
}

impl Builder {
    fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].iter().filter(|t| t.is_some()).count()
    }

    fn distances(&self) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.adj.len()];
        dist[0] = 0;
        let mut queue = std::collections::VecDeque::from([0u32]);
        while let Some(u) = queue.pop_front() {
            for t in self.adj[u as usize].iter().flatten() {
                if dist[*t as usize] == usize::MAX {
                    dist[*t as usize] = dist[u as usize] + 1;
                    queue.push_back(*t);
                }
            }
        }
        dist
    }

    fn fresh(&mut self) -> u32 {
        self.adj.push([None; SLOTS]);
        (self.adj.len() - 1) as u32
    }

    /// Labels the path greedily with the least free letter at each step,
    /// backtracking when the path cannot be closed at its end.
    fn label(&mut self, path: &[u32]) -> Option<Vec<Letter>> {
        fn go(b: &mut Builder, path: &[u32], j: usize, out: &mut Vec<Letter>) -> bool {
            if j + 1 == path.len() {
                return true;
            }
            let (u, v) = (path[j] as usize, path[j + 1] as usize);
            for s in 0..SLOTS {
                let x = Letter::from_slot(s);
                let back = x.inverse().slot();
                if b.adj[u][s].is_some() || b.adj[v][back].is_some() || (u == v && s == back) {
                    continue;
                }
                b.adj[u][s] = Some(v as u32);
                b.adj[v][back] = Some(u as u32);
                out.push(x);
                if go(b, path, j + 1, out) {
                    return true;
                }
                out.pop();
                b.adj[u][s] = None;
                b.adj[v][back] = None;
            }
            false
        }
        let mut out = Vec::with_capacity(path.len());
        go(self, path, 0, &mut out).then_some(out)
    }
}

/// Builds the graph with parameter `c` after `steps` paths (the first path
/// being the circuit at the base).
pub fn build_pathological(c: usize, steps: usize) -> Result<PathologicalGraph> {
    if c < 4 {
        return invalid(format!("c = {c} is too small; need c >= 4"));
    }
    if steps == 0 {
        return invalid("need at least one step");
    }
    let mut b = Builder { adj: vec![[None; SLOTS]] };
    let mut paths: Vec<Vec<u32>> = Vec::with_capacity(steps);
    let mut letters = Vec::with_capacity(steps);
    let mut terminal_ties = Vec::new();

    let mut circuit = vec![0u32];
    for _ in 1..c {
        circuit.push(b.fresh());
    }
    circuit.push(0);
    letters.push(b.label(&circuit).ok_or_else(|| Error::Precondition("cannot label the first circuit".into()))?);
    paths.push(circuit);

    for k in 2..=steps {
        let prev = paths.last().unwrap();
        let start = prev[prev.len() - 2];
        let dist = b.distances();
        // degree the vertex will have once the path is attached
        let fits = |v: u32| b.degree(v) + 1 + usize::from(v == start) <= SLOTS;
        let best = (0..b.adj.len() as u32).filter(|&v| fits(v)).map(|v| dist[v as usize]).min();
        let Some(best) = best else {
            return Err(Error::Precondition(format!("no vertex can end path {k}")));
        };
        let tied: Vec<u32> = (0..b.adj.len() as u32).filter(|&v| fits(v) && dist[v as usize] == best).collect();
        terminal_ties.push(tied.len());
        let end = tied[0];
        let len = 2 * k * c;
        let mut path = vec![start];
        for _ in 1..len {
            path.push(b.fresh());
        }
        path.push(end);
        letters.push(b.label(&path).ok_or_else(|| Error::Precondition(format!("cannot label path {k} without folding")))?);
        paths.push(path);
    }

    let mut edges = Vec::new();
    for (path, word) in paths.iter().zip(&letters) {
        for (j, &x) in word.iter().enumerate() {
            let (u, v) = (path[j], path[j + 1]);
            edges.push(if x.is_inverse() { (v, x.inverse(), u) } else { (u, x, v) });
        }
    }
    let raw = CosetGraph::from_edges(2, b.adj.len(), &edges)?;
    let (graph, map) = raw.canonical_map();
    let paths = paths.into_iter().map(|p| p.into_iter().map(|v| map[v as usize]).collect()).collect();
    Ok(PathologicalGraph { graph, c, steps, paths, letters, terminal_ties })
}

impl PathologicalGraph {
    fn edge(&self, k: usize, j: usize) -> Edge {
        let (u, v, x) = (self.paths[k][j], self.paths[k][j + 1], self.letters[k][j]);
        if x.is_inverse() {
            Edge { from: v, label: x.inverse(), to: u }
        } else {
            Edge { from: u, label: x, to: v }
        }
    }

    fn tree_without(&self, cut: impl Fn(usize) -> usize) -> Vec<Edge> {
        let mut edges = Vec::new();
        for k in 0..self.paths.len() {
            let skip = cut(self.letters[k].len());
            for j in 0..self.letters[k].len() {
                if j != skip {
                    edges.push(self.edge(k, j));
                }
            }
        }
        edges
    }

    pub fn max_degree(&self) -> usize {
        (0..self.graph.vertex_count() as u32).map(|v| self.graph.degree(v)).max().unwrap_or(0)
    }
}

/// The two spanning trees: the last edge of every path removed (linear),
/// and the middle edge removed (exponential).
pub fn pathological_transversals(pg: &PathologicalGraph) -> Result<(Transversal, Transversal)> {
    let region = Region::from_graph(&pg.graph);
    let linear = Transversal::new(region.clone(), Strategy::EdgeList(pg.tree_without(|len| len - 1)))?;
    let exponential = Transversal::new(region, Strategy::EdgeList(pg.tree_without(|len| len / 2)))?;
    Ok((linear, exponential))
}

/// `Γ_T(i)` counted over the vertices of the constructed graph only, for
/// `i` up to the height of the tree. Missing transitions are treated as
/// not yet built rather than as hanging trees.
pub fn constructed_growth(t: &Transversal) -> Vec<i64> {
    let height = t.labels().iter().map(|l| l.len()).max().unwrap_or(0);
    let mut counts = vec![0i64; height + 1];
    for l in t.labels() {
        counts[l.len()] += 1;
    }
    counts
        .iter()
        .scan(0i64, |acc, &g| {
            *acc += g;
            Some(*acc)
        })
        .collect()
}
