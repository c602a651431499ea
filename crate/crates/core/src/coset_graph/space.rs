use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{invalid, Result};
use crate::words::{Letter, Word};

use super::CosetGraph;

/// A based coset graph presented by its transition function.
///
/// Complete spaces (every vertex has all `2n` transitions) return `Some`
/// from [`CosetSpace::step`] always. Partial spaces return `None` where a
/// transition is not known.
pub trait CosetSpace {
    type Vertex: Clone + Eq + Hash + Debug;

    fn rank(&self) -> usize;

    fn base(&self) -> Self::Vertex;

    fn step(&self, v: &Self::Vertex, x: Letter) -> Option<Self::Vertex>;

    fn trace(&self, w: &Word) -> Option<Self::Vertex> {
        w.letters().iter().try_fold(self.base(), |v, &x| self.step(&v, x))
    }

    fn contains(&self, w: &Word) -> bool {
        self.trace(w).is_some_and(|v| v == self.base())
    }
}

/// A vertex of the completed coset graph: either a vertex of the core, or
/// a vertex of a hanging tree, named by the reduced word that reaches it
/// from the core vertex where the tree is attached.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum CompletionVertex {
    Core(u32),
    Hanging { anchor: u32, path: Word },
}

/// The full coset graph of a finitely generated subgroup: its core plus a
/// hanging tree at every missing transition, so that every vertex has
/// exactly `2n` incident edge-ends.
///
/// Hanging vertices are computed from their names, so queries are pure and
/// there is no shared cache; the type is `Send + Sync`.
#[derive(Clone, Debug)]
pub struct Completion {
    core: CosetGraph,
}

impl Completion {
    /// Completion of the subgroup whose (not necessarily core) graph is `g`.
    pub fn new(g: &CosetGraph) -> Self {
        Completion { core: g.core() }
    }

    pub fn from_generators(rank: usize, generators: &[Word]) -> Result<Self> {
        Ok(Completion::new(&CosetGraph::from_generators(rank, generators)?))
    }

    pub fn core(&self) -> &CosetGraph {
        &self.core
    }
}

impl CosetSpace for Completion {
    type Vertex = CompletionVertex;

    fn rank(&self) -> usize {
        self.core.rank()
    }

    fn base(&self) -> CompletionVertex {
        CompletionVertex::Core(self.core.base())
    }

    fn step(&self, v: &CompletionVertex, x: Letter) -> Option<CompletionVertex> {
        Some(match v {
            CompletionVertex::Core(u) => match self.core.target(*u, x) {
                Some(t) => CompletionVertex::Core(t),
                None => CompletionVertex::Hanging { anchor: *u, path: Word::reduce(self.core.alphabet(), [x]).ok()? },
            },
            CompletionVertex::Hanging { anchor, path } => {
                let mut path = path.clone();
                path.push(x);
                if path.is_identity() {
                    CompletionVertex::Core(*anchor)
                } else {
                    CompletionVertex::Hanging { anchor: *anchor, path }
                }
            }
        })
    }
}

/// A finite graph read as a (possibly partial) space.
#[derive(Clone, Copy, Debug)]
pub struct GraphSpace<'a>(pub &'a CosetGraph);

impl CosetSpace for GraphSpace<'_> {
    type Vertex = u32;

    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn base(&self) -> u32 {
        self.0.base()
    }

    fn step(&self, v: &u32, x: Letter) -> Option<u32> {
        self.0.target(*v, x)
    }
}

/// Coset graph of the kernel of a homomorphism from the free group to
/// `Z^k`, given by the images of the generators. With the standard basis
/// as images this is the commutator subgroup and the graph is the grid.
#[derive(Clone, Debug)]
pub struct AbelianQuotient {
    images: Vec<Vec<i64>>,
}

impl AbelianQuotient {
    pub fn new(images: Vec<Vec<i64>>) -> Result<Self> {
        if images.is_empty() {
            return invalid("need at least one generator image");
        }
        let k = images[0].len();
        if images.iter().any(|v| v.len() != k) {
            return invalid("generator images have different dimensions");
        }
        Ok(AbelianQuotient { images })
    }

    /// The commutator subgroup of a free group of rank `n`: generator `i`
    /// maps to the `i`-th basis vector of `Z^n`.
    pub fn commutator(rank: usize) -> Self {
        let images = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
        AbelianQuotient { images }
    }

    /// Image of a word in `Z^k`.
    pub fn image(&self, w: &Word) -> Vec<i64> {
        self.trace(w).expect("abelian quotient is complete")
    }
}

impl CosetSpace for AbelianQuotient {
    type Vertex = Vec<i64>;

    fn rank(&self) -> usize {
        self.images.len()
    }

    fn base(&self) -> Vec<i64> {
        vec![0; self.images[0].len()]
    }

    fn step(&self, v: &Vec<i64>, x: Letter) -> Option<Vec<i64>> {
        let img = &self.images[x.generator()];
        let sign = if x.is_inverse() { -1 } else { 1 };
        Some(v.iter().zip(img).map(|(a, b)| a + sign * b).collect())
    }
}

/// Cayley graph of a finite permutation group given by the images of the
/// generators: the coset graph of the kernel of `F -> Sym(m)`. Vertices
/// are permutations (as image lists), multiplied on the right.
#[derive(Clone, Debug)]
pub struct PermutationQuotient {
    perms: Vec<Vec<usize>>,
    inverses: Vec<Vec<usize>>,
}

impl PermutationQuotient {
    pub fn new(perms: Vec<Vec<usize>>) -> Result<Self> {
        let Some(m) = perms.first().map(Vec::len) else {
            return invalid("need at least one generator image");
        };
        let mut inverses = Vec::with_capacity(perms.len());
        for p in &perms {
            let mut inv = vec![usize::MAX; m];
            for (i, &j) in p.iter().enumerate() {
                if p.len() != m || j >= m || inv[j] != usize::MAX {
                    return invalid("generator images must be permutations of one degree");
                }
                inv[j] = i;
            }
            inverses.push(inv);
        }
        Ok(PermutationQuotient { perms, inverses })
    }
}

impl CosetSpace for PermutationQuotient {
    type Vertex = Vec<usize>;

    fn rank(&self) -> usize {
        self.perms.len()
    }

    fn base(&self) -> Vec<usize> {
        (0..self.perms[0].len()).collect()
    }

    fn step(&self, v: &Vec<usize>, x: Letter) -> Option<Vec<usize>> {
        let p = if x.is_inverse() { &self.inverses[x.generator()] } else { &self.perms[x.generator()] };
        // apply v first, then the generator
        Some(v.iter().map(|&i| p[i]).collect())
    }
}
