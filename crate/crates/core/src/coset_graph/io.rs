use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::words::{Letter, MAX_TEXT_RANK};

use super::CosetGraph;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: u32,
    pub label: String,
    pub to: u32,
}

/// JSON form of a coset graph. Only positive-letter arcs are stored,
/// ordered by `(from, label)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub rank: usize,
    pub base: u32,
    pub vertices: Vec<u32>,
    pub edges: Vec<EdgeJson>,
}

impl From<&CosetGraph> for GraphJson {
    fn from(g: &CosetGraph) -> Self {
        GraphJson {
            rank: g.rank(),
            base: g.base(),
            vertices: (0..g.vertex_count() as u32).collect(),
            edges: g.edges().map(|(from, x, to)| EdgeJson { from, label: x.to_string(), to }).collect(),
        }
    }
}

impl TryFrom<&GraphJson> for CosetGraph {
    type Error = crate::Error;

    fn try_from(j: &GraphJson) -> Result<Self> {
        let (rank, n, edges) = j.parts()?;
        CosetGraph::from_edges(rank, n, &edges)
    }
}

/// Rank, vertex count and positive arcs.
type Parts = (usize, usize, Vec<(u32, Letter, u32)>);

impl GraphJson {
    fn parts(&self) -> Result<Parts> {
        if self.base != 0 {
            return invalid("base vertex must be 0");
        }
        if self.rank > MAX_TEXT_RANK {
            return invalid(format!("rank {} has no text labels", self.rank));
        }
        if self.vertices.iter().enumerate().any(|(i, &v)| v as usize != i) {
            return invalid("vertices must be 0..n in order");
        }
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let mut chars = e.label.chars();
                match (chars.next().and_then(Letter::from_char), chars.next()) {
                    (Some(x), None) => Ok((e.from, x, e.to)),
                    _ => invalid(format!("bad edge label {:?}", e.label)),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((self.rank, self.vertices.len(), edges))
    }
}

impl CosetGraph {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GraphJson::from(self)).expect("graph serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: GraphJson = serde_json::from_str(text)?;
        CosetGraph::try_from(&j)
    }

    /// Reads graph JSON whose arcs need not be folded, and folds them.
    pub fn fold_json(text: &str) -> Result<Self> {
        let j: GraphJson = serde_json::from_str(text)?;
        let (rank, n, edges) = j.parts()?;
        CosetGraph::fold_edges(rank, n, &edges)
    }

    /// Graphviz rendering; the base is drawn as a double circle.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph coset_graph {\n  rankdir=LR;\n");
        for v in 0..self.vertex_count() {
            let shape = if v == 0 { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  {v} [shape={shape}];");
        }
        for (u, x, v) in self.edges() {
            let _ = writeln!(out, "  {u} -> {v} [label=\"{x}\"];");
        }
        out.push_str("}\n");
        out
    }
}
