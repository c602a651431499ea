use crate::words::{Letter, Word};

use super::CosetGraph;

/// Mutable folded graph with union-find vertex identification.
///
/// Every insertion keeps the graph deterministic: adding an edge whose slot
/// is already occupied identifies the two targets, and identifications
/// propagate until no two edges with the same label leave a vertex.
#[derive(Clone, Debug)]
pub(crate) struct Folder {
    slots: usize,
    adj: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    pending: Vec<(usize, usize)>,
}

impl Folder {
    pub fn new(rank: usize) -> Self {
        let mut f = Folder { slots: 2 * rank, adj: Vec::new(), parent: Vec::new(), pending: Vec::new() };
        f.add_vertex();
        f
    }

    pub fn from_graph(g: &CosetGraph) -> Self {
        let mut f =
            Folder { slots: 2 * g.rank(), adj: Vec::with_capacity(g.vertex_count()), parent: Vec::with_capacity(g.vertex_count()), pending: Vec::new() };
        for v in 0..g.vertex_count() as u32 {
            f.parent.push(v as usize);
            f.adj.push((0..f.slots).map(|s| g.target_slot(v, s).map(|t| t as usize)).collect());
        }
        f
    }

    pub fn add_vertex(&mut self) -> usize {
        let id = self.adj.len();
        self.adj.push(vec![None; self.slots]);
        self.parent.push(id);
        id
    }

    pub fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    pub fn target(&mut self, v: usize, x: Letter) -> Option<usize> {
        let v = self.find(v);
        let t = self.adj[v][x.slot()]?;
        Some(self.find(t))
    }

    fn link(&mut self, u: usize, slot: usize, v: usize) {
        match self.adj[u][slot] {
            None => self.adj[u][slot] = Some(v),
            Some(w) => {
                let w = self.find(w);
                if w != v {
                    self.pending.push((w, v));
                }
            }
        }
    }

    pub fn add_edge(&mut self, u: usize, x: Letter, v: usize) {
        let (u, v) = (self.find(u), self.find(v));
        self.link(u, x.slot(), v);
        let v = self.find(v);
        let u = self.find(u);
        self.link(v, x.inverse().slot(), u);
        self.settle();
    }

    fn settle(&mut self) {
        while let Some((a, b)) = self.pending.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, gone) = if a < b { (a, b) } else { (b, a) };
            self.parent[gone] = keep;
            let moved = std::mem::take(&mut self.adj[gone]);
            for (slot, t) in moved.into_iter().enumerate() {
                if let Some(t) = t {
                    let t = self.find(t);
                    self.link(keep, slot, t);
                }
            }
        }
    }

    /// Follows existing transitions from `start`; returns the vertex reached
    /// and the number of letters consumed.
    pub fn trace_prefix(&mut self, start: usize, word: &[Letter]) -> (usize, usize) {
        let mut cur = self.find(start);
        for (i, &x) in word.iter().enumerate() {
            match self.target(cur, x) {
                Some(t) => cur = t,
                None => return (cur, i),
            }
        }
        (cur, word.len())
    }

    /// Attaches a closed path labelled `word` at vertex `at` and folds.
    pub fn attach_loop(&mut self, at: usize, word: &Word) {
        let letters = word.letters();
        if letters.is_empty() {
            return;
        }
        let at = self.find(at);
        let (mut cur, done) = self.trace_prefix(at, &letters[..letters.len() - 1]);
        for &x in &letters[done..letters.len() - 1] {
            let nv = self.add_vertex();
            self.add_edge(cur, x, nv);
            cur = self.find(nv);
        }
        let last = letters[letters.len() - 1];
        let at = self.find(at);
        self.add_edge(cur, last, at);
    }

    /// Empty slots of a live vertex.
    pub fn missing_slots(&mut self, v: usize) -> Vec<Letter> {
        let v = self.find(v);
        (0..self.slots).filter(|&s| self.adj[v][s].is_none()).map(Letter::from_slot).collect()
    }

    /// Canonical graph of the component containing `root`, with vertices
    /// renumbered in ShortLex breadth-first order and `root` as base. Also
    /// returns the representative id behind each new id.
    pub fn finish(&mut self, root: usize) -> (CosetGraph, Vec<usize>) {
        let root = self.find(root);
        let mut order = vec![root];
        let mut new_id = vec![u32::MAX; self.adj.len()];
        new_id[root] = 0;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for s in 0..self.slots {
                if let Some(t) = self.adj[u][s] {
                    let t = self.find(t);
                    if new_id[t] == u32::MAX {
                        new_id[t] = order.len() as u32;
                        order.push(t);
                    }
                }
            }
        }
        let mut trans = vec![None; order.len() * self.slots];
        for (i, &u) in order.iter().enumerate() {
            for s in 0..self.slots {
                if let Some(t) = self.adj[u][s] {
                    let t = self.find(t);
                    trans[i * self.slots + s] = Some(new_id[t]);
                }
            }
        }
        (CosetGraph::from_raw(self.slots / 2, trans), order)
    }
}
