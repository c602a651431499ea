//! Schreier transversals, the coset map and Schreier bases.
//!
//! A transversal is a spanning tree of a [`Region`] rooted at the base. Its
//! vertex labels (tree-path words) form a prefix-closed set of coset
//! representatives. On an open region the tree continues into the hanging
//! trees of the completion, whose edges are all tree edges.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::coset_graph::{CosetGraph, CosetSpace, Edge, Frontier, Region};
use crate::error::{invalid, Error, Result};
use crate::words::{Letter, Word};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Strategy {
    /// Breadth-first, ties broken by ShortLex: labels are the least words
    /// in their cosets.
    ShortLexBfs,
    /// Depth-first, expanding slots in letter order.
    Dfs,
    /// An explicit set of tree edges, validated as a spanning tree.
    EdgeList(Vec<Edge>),
}

#[derive(Clone, Debug)]
pub struct Transversal {
    region: Region,
    parent: Vec<Option<(u32, Letter)>>,
    labels: Vec<Word>,
    tree_edges: BTreeSet<Edge>,
    minimal: bool,
}

impl Transversal {
    pub fn new(region: Region, strategy: Strategy) -> Result<Self> {
        let n = region.vertex_count();
        let mut parent: Vec<Option<(u32, Letter)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let slots = 2 * region.rank();
        let minimal = strategy == Strategy::ShortLexBfs;
        match strategy {
            Strategy::ShortLexBfs => {
                for u in 0..n as u32 {
                    for s in 0..slots {
                        let x = Letter::from_slot(s);
                        if let Some(t) = region.target(u, x) {
                            if !seen[t as usize] {
                                seen[t as usize] = true;
                                parent[t as usize] = Some((u, x));
                            }
                        }
                    }
                }
            }
            Strategy::Dfs => {
                let mut stack: Vec<(u32, usize)> = vec![(0, 0)];
                while let Some(top) = stack.last_mut() {
                    let (u, s) = *top;
                    if s == slots {
                        stack.pop();
                        continue;
                    }
                    top.1 += 1;
                    let x = Letter::from_slot(s);
                    if let Some(t) = region.target(u, x) {
                        if !seen[t as usize] {
                            seen[t as usize] = true;
                            parent[t as usize] = Some((u, x));
                            stack.push((t, 0));
                        }
                    }
                }
            }
            Strategy::EdgeList(edges) => {
                let edges: BTreeSet<Edge> = edges.into_iter().collect();
                if edges.len() + 1 != n {
                    return invalid(format!("{} edges cannot span {n} vertices", edges.len()));
                }
                for e in &edges {
                    if e.label.is_inverse() || region.target(e.from, e.label) != Some(e.to) {
                        return invalid(format!("edge {} -{}-> {} is not in the graph", e.from, e.label, e.to));
                    }
                }
                let mut queue = std::collections::VecDeque::from([0u32]);
                while let Some(u) = queue.pop_front() {
                    for s in 0..slots {
                        let x = Letter::from_slot(s);
                        let Some(t) = region.target(u, x) else { continue };
                        let e = if x.is_inverse() { Edge { from: t, label: x.inverse(), to: u } } else { Edge { from: u, label: x, to: t } };
                        if edges.contains(&e) && !seen[t as usize] {
                            seen[t as usize] = true;
                            parent[t as usize] = Some((u, x));
                            queue.push_back(t);
                        }
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Disconnected);
        }
        // labels in an order where parents come first
        let mut labels = vec![Word::identity(region.rank()); n];
        let mut order = Vec::with_capacity(n);
        let mut children: Vec<Vec<u32>> = vec![Vec::new(); n];
        for v in 1..n {
            children[parent[v].unwrap().0 as usize].push(v as u32);
        }
        let mut stack = vec![0u32];
        while let Some(u) = stack.pop() {
            order.push(u);
            stack.extend(children[u as usize].iter().copied());
        }
        let mut tree_edges = BTreeSet::new();
        for &v in &order[1..] {
            let (p, x) = parent[v as usize].unwrap();
            let mut l = labels[p as usize].clone();
            l.push(x);
            labels[v as usize] = l;
            tree_edges.insert(if x.is_inverse() { Edge { from: v, label: x.inverse(), to: p } } else { Edge { from: p, label: x, to: v } });
        }
        Ok(Transversal { region, parent, labels, tree_edges, minimal })
    }

    /// Spanning tree of a finite folded graph (continued into the hanging
    /// trees of its completion when the graph is not complete).
    pub fn of_graph(g: &CosetGraph, strategy: Strategy) -> Result<Self> {
        Transversal::new(Region::from_graph(g), strategy)
    }

    /// The minimal transversal restricted to the ball of radius `radius`.
    pub fn minimal<S: CosetSpace>(space: &S, radius: usize) -> Result<Self> {
        Transversal::new(Region::explore(space, radius)?, Strategy::ShortLexBfs)
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn rank(&self) -> usize {
        self.region.rank()
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn label(&self, v: u32) -> &Word {
        &self.labels[v as usize]
    }

    /// Labels of the region's vertices, indexed by vertex id.
    pub fn labels(&self) -> &[Word] {
        &self.labels
    }

    pub fn tree_edges(&self) -> &BTreeSet<Edge> {
        &self.tree_edges
    }

    pub fn is_tree_edge(&self, e: &Edge) -> bool {
        self.tree_edges.contains(e)
    }

    pub fn tree_parent(&self, v: u32) -> Option<u32> {
        self.parent[v as usize].map(|(p, _)| p)
    }

    /// Tree depth of `v` (the length of its label).
    pub fn depth(&self, v: u32) -> usize {
        self.labels[v as usize].len()
    }

    /// Child of `v` along `x` in the tree, if that edge is a tree edge
    /// leading away from the root and lies in the region.
    pub fn tree_child(&self, v: u32, x: Letter) -> Option<u32> {
        let t = self.region.target(v, x)?;
        (self.parent[t as usize] == Some((v, x))).then_some(t)
    }

    /// Number of tree edges at `v`, including edges into hanging trees.
    pub fn tree_degree(&self, v: u32) -> usize {
        let slots = 2 * self.rank();
        let mut deg = usize::from(v != 0);
        for s in 0..slots {
            let x = Letter::from_slot(s);
            match self.region.target(v, x) {
                Some(_) => deg += usize::from(self.tree_child(v, x).is_some()),
                None => deg += usize::from(self.region.frontier() == Frontier::Open),
            }
        }
        deg
    }

    /// Largest `i` for which the labels of length at most `i` are all
    /// known.
    pub fn valid_radius(&self) -> usize {
        self.region.exact_radius()
    }

    /// Number of labels of each length `0..=horizon`.
    pub fn sphere_sizes(&self, horizon: usize) -> Result<Vec<u64>> {
        if horizon > self.valid_radius() {
            return invalid(format!("horizon {horizon} exceeds the explored radius {}", self.valid_radius()));
        }
        let mut counts = vec![0u64; horizon + 1];
        for l in &self.labels {
            if l.len() <= horizon {
                counts[l.len()] += 1;
            }
        }
        if self.region.frontier() == Frontier::Open {
            let branching = 2 * self.rank() as u64 - 1;
            for v in 0..self.region.vertex_count() as u32 {
                let missing = (0..2 * self.rank()).filter(|&s| self.region.graph().target_slot(v, s).is_none()).count() as u64;
                let mut layer = missing;
                for c in counts.iter_mut().take(horizon + 1).skip(self.depth(v) + 1) {
                    *c = c.saturating_add(layer);
                    layer = layer.saturating_mul(branching);
                }
            }
        }
        Ok(counts)
    }

    /// Follows `w` from the root along tree edges as far as possible.
    /// Returns the number of letters read and the region vertex reached,
    /// or `None` for the vertex when the walk entered a hanging tree (in
    /// which case all of `w` lies in the tree).
    pub fn max_prefix(&self, w: &Word) -> (usize, Option<u32>) {
        let mut cur = 0u32;
        for (i, &x) in w.letters().iter().enumerate() {
            match self.region.target(cur, x) {
                Some(_) => match self.tree_child(cur, x) {
                    Some(t) => cur = t,
                    None => return (i, Some(cur)),
                },
                None if self.region.frontier() == Frontier::Open => return (w.len(), None),
                None => return (i, Some(cur)),
            }
        }
        (w.len(), Some(cur))
    }

    /// Whether `w` is the label of a vertex of the tree.
    pub fn contains_label(&self, w: &Word) -> bool {
        self.max_prefix(w).0 == w.len()
    }

    /// Walks `w` from the base; `Ok(None)` means the walk entered a hanging
    /// tree at the returned letter index.
    fn walk(&self, w: &Word) -> Result<(u32, Option<usize>)> {
        let mut cur = 0u32;
        for (i, &x) in w.letters().iter().enumerate() {
            match self.region.target(cur, x) {
                Some(t) => cur = t,
                None => match self.region.frontier() {
                    Frontier::Open => return Ok((cur, Some(i))),
                    _ => return Err(Error::OutsideRegion { vertex: cur, radius: self.region.exact_radius() }),
                },
            }
        }
        Ok((cur, None))
    }

    /// The coset map: the representative `t` with `Ht = Hw`.
    pub fn coset_map(&self, w: &Word) -> Result<Word> {
        match self.walk(w)? {
            (v, None) => Ok(self.labels[v as usize].clone()),
            (anchor, Some(i)) => Ok(self.labels[anchor as usize].mul(&w.suffix_from(i))),
        }
    }

    /// Region vertex reached by `w`, if the walk stays in the region.
    pub fn vertex_of(&self, w: &Word) -> Result<Option<u32>> {
        Ok(match self.walk(w)? {
            (v, None) => Some(v),
            _ => None,
        })
    }
}

/// One Schreier generator `t·x·φ(tx)⁻¹`, from the non-tree edge
/// `from --x--> to` with `t` the label of `from`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BasisElement {
    #[serde(serialize_with = "as_text")]
    pub t: Word,
    #[serde(serialize_with = "letter_as_text")]
    pub x: Letter,
    #[serde(rename = "basis", serialize_with = "as_text")]
    pub word: Word,
    #[serde(skip)]
    pub from: u32,
    #[serde(skip)]
    pub to: u32,
}

fn as_text<S: serde::Serializer>(w: &Word, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_string())
}

fn letter_as_text<S: serde::Serializer>(x: &Letter, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Clone, Debug)]
pub struct SchreierBasis {
    elements: Vec<BasisElement>,
    by_edge: HashMap<(u32, usize), usize>,
}

impl SchreierBasis {
    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn words(&self) -> Vec<Word> {
        self.elements.iter().map(|e| e.word.clone()).collect()
    }

    /// Index of the element for the non-tree edge leaving `from` along the
    /// positive letter `x`.
    pub fn index_of(&self, from: u32, x: Letter) -> Option<usize> {
        self.by_edge.get(&(from, x.slot())).copied()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.elements).expect("basis serialises")
    }
}

/// One basis element per non-tree edge of the region.
pub fn schreier_basis(t: &Transversal) -> SchreierBasis {
    let mut elements = Vec::new();
    let mut by_edge = HashMap::new();
    for (from, x, to) in t.region.graph().edges() {
        let e = Edge { from, label: x, to };
        if t.is_tree_edge(&e) {
            continue;
        }
        let mut word = t.label(from).clone();
        word.push(x);
        let word = word.mul(&t.label(to).invert());
        by_edge.insert((from, x.slot()), elements.len());
        elements.push(BasisElement { t: t.label(from).clone(), x, word, from, to });
    }
    SchreierBasis { elements, by_edge }
}

/// `1 + (n - 1)m`, the rank of a subgroup of index `m` in a free group of
/// rank `n`.
pub fn schreier_formula(rank: usize, index: usize) -> usize {
    1 + (rank - 1) * index
}

/// Whether `words` contains the identity and every initial segment of
/// each member.
pub fn verify_schreier_property(words: &[Word]) -> bool {
    let set: HashSet<&Word> = words.iter().collect();
    let Some(rank) = words.first().map(Word::rank) else { return false };
    set.contains(&Word::identity(rank)) && words.iter().all(|w| (0..w.len()).all(|k| set.contains(&w.prefix(k))))
}

/// The length identity `l(u) + l(v) = l(w) - 1`, where `u` and `v` are the
/// longest prefixes of `w` and `w⁻¹` lying in the transversal.
pub fn satisfies_length_property(t: &Transversal, w: &Word) -> bool {
    let (u, _) = t.max_prefix(w);
    let (v, _) = t.max_prefix(&w.invert());
    u + v + 1 == w.len()
}
