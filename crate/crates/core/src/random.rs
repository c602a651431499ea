//! Seeded generators for test instances. The same seed always gives the
//! same instance.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexes::{simplex_boundary, SimplicialComplex};
use crate::coset_graph::CosetGraph;
use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform reduced word of exactly `len` letters.
pub fn reduced_word<R: Rng>(rng: &mut R, rank: usize, len: usize) -> Word {
    let slots = 2 * rank;
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    for _ in 0..len {
        let x = loop {
            let x = Letter::from_slot(rng.gen_range(0..slots));
            if letters.last() != Some(&x.inverse()) {
                break x;
            }
        };
        letters.push(x);
    }
    Word::reduce(Alphabet::new(rank).expect("valid rank"), letters).expect("letters in range")
}

/// Reduced word with length uniform in `0..=max`.
pub fn word_up_to<R: Rng>(rng: &mut R, rank: usize, max: usize) -> Word {
    let len = rng.gen_range(0..=max);
    reduced_word(rng, rank, len)
}

/// Between 1 and `max_gens` nontrivial generators of length at most `max_len`.
pub fn subgroup_generators<R: Rng>(rng: &mut R, rank: usize, max_gens: usize, max_len: usize) -> Vec<Word> {
    let k = rng.gen_range(1..=max_gens.max(1));
    (0..k)
        .map(|_| {
            let len = rng.gen_range(1..=max_len.max(1));
            reduced_word(rng, rank, len)
        })
        .collect()
}

fn connected(perms: &[Vec<usize>]) -> bool {
    let m = perms[0].len();
    let mut seen = vec![false; m];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(p) = stack.pop() {
        for perm in perms {
            for q in [perm[p], perm.iter().position(|&x| x == p).expect("permutation")] {
                if !std::mem::replace(&mut seen[q], true) {
                    stack.push(q);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// `rank` permutations of `0..m` generating a transitive group.
pub fn transitive_permutations<R: Rng>(rng: &mut R, rank: usize, m: usize) -> Vec<Vec<usize>> {
    loop {
        let perms: Vec<Vec<usize>> = (0..rank)
            .map(|_| {
                let mut p: Vec<usize> = (0..m).collect();
                p.shuffle(rng);
                p
            })
            .collect();
        if connected(&perms) {
            return perms;
        }
    }
}

/// Complete folded graph with between 1 and `max_m` vertices: a subgroup of
/// finite index.
pub fn finite_index_graph<R: Rng>(rng: &mut R, rank: usize, max_m: usize) -> CosetGraph {
    let m = rng.gen_range(1..=max_m.max(1));
    CosetGraph::from_permutations(&transitive_permutations(rng, rank, m)).expect("transitive action")
}

/// Complete graph on `m` vertices with no loops and no parallel edges, so
/// a `2·rank`-regular simple graph. Permutations are drawn one at a time,
/// each redrawn until it avoids the edges already placed; gives up after
/// `tries` draws in total.
pub fn simple_regular_graph<R: Rng>(rng: &mut R, rank: usize, m: usize, tries: usize) -> Result<CosetGraph> {
    let mut left = tries;
    while left > 0 {
        let mut edges = BTreeSet::new();
        let mut perms = Vec::with_capacity(rank);
        while perms.len() < rank && left > 0 {
            left -= 1;
            let mut p: Vec<usize> = (0..m).collect();
            p.shuffle(rng);
            let mut placed = edges.clone();
            if p.iter().enumerate().all(|(u, &v)| u != v && placed.insert((u.min(v), u.max(v)))) {
                edges = placed;
                perms.push(p);
            }
        }
        if perms.len() == rank && connected(&perms) {
            return CosetGraph::from_permutations(&perms);
        }
    }
    Err(Error::Precondition(format!("no simple {}-regular graph on {m} vertices found in {tries} tries", 2 * rank)))
}

/// A triangulated 2-sphere, so a 2-regular complex: the tetrahedron
/// boundary after `steps` random moves, each either a stellar subdivision
/// of a triangle or a flip of an edge whose opposite vertices are not
/// already joined.
pub fn sphere<R: Rng>(rng: &mut R, steps: usize) -> SimplicialComplex {
    let mut tris: Vec<[u32; 3]> = simplex_boundary(3).simplices(2).map(|t| [t[0], t[1], t[2]]).collect();
    let mut next = 4u32;
    for _ in 0..steps {
        if rng.gen_bool(0.5) {
            let k = rng.gen_range(0..tris.len());
            let [a, b, c] = tris.swap_remove(k);
            tris.extend([[a, b, next], [a, c, next], [b, c, next]]);
            next += 1;
        } else {
            let k = rng.gen_range(0..tris.len());
            let t = tris[k];
            let (u, v) = match rng.gen_range(0..3) {
                0 => (t[0], t[1]),
                1 => (t[0], t[2]),
                _ => (t[1], t[2]),
            };
            let opposite: Vec<(usize, u32)> = tris
                .iter()
                .enumerate()
                .filter(|(_, s)| s.contains(&u) && s.contains(&v))
                .map(|(i, s)| (i, *s.iter().find(|&&w| w != u && w != v).expect("third vertex")))
                .collect();
            let [(i, x), (j, y)] = opposite[..] else { unreachable!("every edge of a sphere lies in two triangles") };
            let joined = tris.iter().any(|s| s.contains(&x) && s.contains(&y));
            if !joined {
                tris[i] = [u, x, y];
                tris[j] = [v, x, y];
            }
        }
    }
    let principal: Vec<Vec<u32>> = tris.iter().map(|t| t.to_vec()).collect();
    SimplicialComplex::from_principal(&principal).expect("valid triangulation")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_reproducible() {
        let a = subgroup_generators(&mut rng(7), 2, 4, 8);
        let b = subgroup_generators(&mut rng(7), 2, 4, 8);
        assert_eq!(a, b);
        assert!(a.iter().all(|w| !w.is_identity() && w.len() <= 8));
    }

    #[test]
    fn finite_index_graphs_are_complete() {
        let mut r = rng(1);
        for _ in 0..20 {
            let g = finite_index_graph(&mut r, 3, 8);
            assert!(g.is_complete());
            assert!(g.vertex_count() <= 8);
        }
    }

    #[test]
    fn simple_regular() {
        let g = simple_regular_graph(&mut rng(3), 2, 10, 10_000).unwrap();
        let c = SimplicialComplex::from_graph(&g).unwrap();
        assert!(c.is_n_regular(4));
    }

    #[test]
    fn spheres_stay_spheres() {
        let mut r = rng(11);
        for steps in [0, 5, 40] {
            let s = sphere(&mut r, steps);
            assert!(s.is_n_regular(2));
            assert_eq!(s.euler_characteristic(2), 2);
        }
    }
}
