//! Independent oracles for the integration tests. None of these reuse the
//! library's folding, exploration or series code: words are plain `Vec<i32>`
//! (`k + 1` for generator `k`, negative for inverses) and graphs are read
//! only through `CosetGraph::target`.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, VecDeque};

use stallings::{CosetGraph, Letter, Word};

pub fn signed(w: &Word) -> Vec<i32> {
    w.letters().iter().map(|x| x.signed()).collect()
}

fn letter(s: i32) -> Letter {
    Letter::from_signed(s).expect("nonzero")
}

/// Every reduced word of length at most `max` over `rank` generators.
pub fn all_reduced_words(rank: usize, max: usize) -> Vec<Vec<i32>> {
    let gens: Vec<i32> = (1..=rank as i32).flat_map(|g| [g, -g]).collect();
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::<i32>::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &layer {
            for &g in &gens {
                if w.last() != Some(&-g) {
                    let mut v = w.clone();
                    v.push(g);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Walks `w` from the base; `None` when a transition is missing.
pub fn walk(g: &CosetGraph, w: &[i32]) -> Option<u32> {
    let mut v = 0;
    for &s in w {
        v = g.target(v, letter(s))?;
    }
    Some(v)
}

pub fn member(g: &CosetGraph, w: &[i32]) -> bool {
    walk(g, w) == Some(0)
}

/// Stallings folding with a union-find over hash-map adjacency.
pub struct NaiveFolder {
    parent: Vec<usize>,
    adj: Vec<HashMap<i32, usize>>,
}

impl NaiveFolder {
    pub fn new() -> Self {
        NaiveFolder { parent: vec![0], adj: vec![HashMap::new()] }
    }

    fn find(&mut self, v: usize) -> usize {
        let mut r = v;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        self.parent[v] = r;
        r
    }

    fn fresh(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.adj.push(HashMap::new());
        self.parent.len() - 1
    }

    fn join(&mut self, u: usize, s: i32, v: usize) {
        let mut pending = vec![(u, s, v)];
        while let Some((u, s, v)) = pending.pop() {
            let (u, v) = (self.find(u), self.find(v));
            for (a, lab, b) in [(u, s, v), (v, -s, u)] {
                let a = self.find(a);
                let b = self.find(b);
                match self.adj[a].get(&lab).copied() {
                    None => {
                        self.adj[a].insert(lab, b);
                    }
                    Some(c) => {
                        let c = self.find(c);
                        if c != b {
                            // identify b and c, then replay the loser's arcs
                            let (keep, gone) = (b.min(c), b.max(c));
                            self.parent[gone] = keep;
                            let arcs: Vec<(i32, usize)> = self.adj[gone].drain().collect();
                            for (l, t) in arcs {
                                pending.push((keep, l, t));
                            }
                        }
                    }
                }
            }
        }
    }

    pub fn add_loop(&mut self, w: &[i32]) {
        if w.is_empty() {
            return;
        }
        let mut cur = 0;
        for (i, &s) in w.iter().enumerate() {
            let next = if i + 1 == w.len() { 0 } else { self.fresh() };
            self.join(cur, s, next);
            cur = self.find(next);
        }
    }

    /// `E - V + 1` over live vertices, counting each edge once.
    pub fn rank(&mut self) -> usize {
        let live: Vec<usize> = (0..self.parent.len()).filter(|&v| self.find(v) == v).collect();
        let mut edges = 0;
        for &v in &live {
            edges += self.adj[v].keys().filter(|&&s| s > 0).count();
        }
        edges + 1 - live.len()
    }
}

/// `rk(i)` straight from the definition.
pub fn rank_growth_oracle(g: &CosetGraph, i: usize) -> usize {
    let mut f = NaiveFolder::new();
    for w in all_reduced_words(g.rank(), i) {
        if !w.is_empty() && member(g, &w) {
            f.add_loop(&w);
        }
    }
    f.rank()
}

/// A coset in the completed graph: a vertex of `g` and a reduced word that
/// leaves `g` at that vertex along a missing transition.
type Coset = (u32, Vec<i32>);

fn coset_step(g: &CosetGraph, c: &Coset, s: i32) -> Coset {
    let (v, tail) = c;
    if let Some(&last) = tail.last() {
        let mut t = tail.clone();
        if last == -s {
            t.pop();
        } else {
            t.push(s);
        }
        return (*v, t);
    }
    match g.target(*v, letter(s)) {
        Some(u) => (u, Vec::new()),
        None => (*v, vec![s]),
    }
}

/// Ball data of the completed coset graph of `g`, by breadth-first search
/// over cosets.
pub struct CosetBall {
    /// `Γ(i)` for `i = 0..=radius`.
    pub volumes: Vec<i64>,
    /// `ρ(i)` for `i = 0..=radius`.
    pub ranks: Vec<i64>,
}

pub fn coset_ball(g: &CosetGraph, radius: usize) -> CosetBall {
    let rank = g.rank() as i32;
    let gens: Vec<i32> = (1..=rank).flat_map(|k| [k, -k]).collect();
    let mut dist: BTreeMap<Coset, usize> = BTreeMap::from([((0, Vec::new()), 0)]);
    let mut queue = VecDeque::from([(0u32, Vec::<i32>::new())]);
    while let Some(c) = queue.pop_front() {
        let d = dist[&c];
        if d == radius {
            continue;
        }
        for &s in &gens {
            let n = coset_step(g, &c, s);
            if !dist.contains_key(&n) {
                dist.insert(n.clone(), d + 1);
                queue.push_back(n);
            }
        }
    }
    let mut volumes = Vec::new();
    let mut ranks = Vec::new();
    for i in 0..=radius {
        let inside: Vec<&Coset> = dist.iter().filter(|(_, &d)| d <= i).map(|(c, _)| c).collect();
        let mut edges = 0i64;
        for c in &inside {
            for k in 1..=rank {
                let n = coset_step(g, c, k);
                if dist.get(&n).is_some_and(|&d| d <= i) {
                    edges += 1;
                }
            }
        }
        volumes.push(inside.len() as i64);
        ranks.push(edges - inside.len() as i64 + 1);
    }
    CosetBall { volumes, ranks }
}

/// `r(i) = 1 + ((2n-1)/2)Γ(i) - ½Γ(i+1)`, doubled.
pub fn doubled_r(rank: usize, volumes: &[i64], i: usize) -> i64 {
    2 + (2 * rank as i64 - 1) * volumes[i] - volumes[i + 1]
}

/// Ball volumes in the Cayley graph of a finite permutation group, with
/// `x·g` meaning apply `x` then `g`.
pub fn permutation_ball(perms: &[Vec<usize>], radius: usize) -> Vec<i64> {
    let m = perms[0].len();
    let inverse = |p: &Vec<usize>| {
        let mut q = vec![0; m];
        for (i, &j) in p.iter().enumerate() {
            q[j] = i;
        }
        q
    };
    let gens: Vec<Vec<usize>> = perms.iter().flat_map(|p| [p.clone(), inverse(p)]).collect();
    let id: Vec<usize> = (0..m).collect();
    let mut dist = BTreeMap::from([(id.clone(), 0usize)]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d == radius {
            continue;
        }
        for g in &gens {
            let y: Vec<usize> = x.iter().map(|&p| g[p]).collect();
            if !dist.contains_key(&y) {
                dist.insert(y.clone(), d + 1);
                queue.push_back(y);
            }
        }
    }
    (0..=radius).map(|i| dist.values().filter(|&&d| d <= i).count() as i64).collect()
}

/// Ball volumes in the square grid.
pub fn grid_ball(radius: usize) -> Vec<i64> {
    let r = radius as i64;
    (0..=r).map(|i| (-i..=i).flat_map(|x| (-i..=i).map(move |y| (x, y))).filter(|(x, y)| x.abs() + y.abs() <= i).count() as i64).collect()
}

/// Exponent sum of generator `k` (0-based).
pub fn exponent_sum(w: &[i32], k: usize) -> i64 {
    w.iter()
        .map(|&s| {
            if s == k as i32 + 1 {
                1
            } else if s == -(k as i32 + 1) {
                -1
            } else {
                0
            }
        })
        .sum()
}

pub fn to_word(rank: usize, w: &[i32]) -> Word {
    Word::from_signed(stallings::Alphabet::new(rank).unwrap(), w).unwrap()
}

pub fn graph(rank: usize, gens: &str) -> CosetGraph {
    CosetGraph::from_generators(rank, &Word::parse_list(rank, gens).unwrap()).unwrap()
}
