//! Finite simplicial complexes: spanning subcomplexes, contractibility
//! certificates, regularity, and the number of spheres in the bouquet a
//! complex with a contractible spanning subcomplex is homotopic to.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::coset_graph::CosetGraph;
use crate::error::{invalid, Error, Result};

/// Sorted vertex ids.
pub type Simplex = Vec<u32>;

/// A face-closed set of simplices, stored by dimension.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialComplex {
    faces: Vec<BTreeSet<Simplex>>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    dim: usize,
    principal: Vec<Vec<u32>>,
}

fn all_faces(s: &[u32], out: &mut [BTreeSet<Simplex>]) {
    // every nonempty subset of s
    let k = s.len();
    for mask in 1u64..(1 << k) {
        let f: Simplex = (0..k).filter(|&j| mask >> j & 1 == 1).map(|j| s[j]).collect();
        out[f.len() - 1].insert(f);
    }
}

fn facets(s: &[u32]) -> impl Iterator<Item = Simplex> + '_ {
    (0..s.len()).map(move |skip| s.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect())
}

impl SimplicialComplex {
    /// The complex generated by the given simplices.
    pub fn from_principal(principal: &[Vec<u32>]) -> Result<Self> {
        let mut sorted = Vec::with_capacity(principal.len());
        for s in principal {
            let mut s = s.clone();
            s.sort_unstable();
            if s.is_empty() {
                return invalid("empty simplex");
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return invalid(format!("simplex {s:?} repeats a vertex"));
            }
            if s.len() > 20 {
                return invalid(format!("simplex {s:?} is too large"));
            }
            sorted.push(s);
        }
        let top = sorted.iter().map(Vec::len).max().unwrap_or(0);
        let mut faces = vec![BTreeSet::new(); top];
        for s in &sorted {
            all_faces(s, &mut faces);
        }
        Ok(SimplicialComplex { faces })
    }

    fn from_faces(mut faces: Vec<BTreeSet<Simplex>>) -> Self {
        while faces.last().is_some_and(BTreeSet::is_empty) {
            faces.pop();
        }
        SimplicialComplex { faces }
    }

    /// Reads `{"dim": d, "principal": [[v, ...], ...]}`; `dim` must match.
    pub fn from_json(text: &str) -> Result<Self> {
        let j: ComplexJson = serde_json::from_str(text)?;
        let c = SimplicialComplex::from_principal(&j.principal)?;
        if c.dim() != Some(j.dim) {
            return invalid(format!("declared dimension {} but the simplices span {:?}", j.dim, c.dim()));
        }
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        let j = ComplexJson { dim: self.dim().unwrap_or(0), principal: self.principal() };
        serde_json::to_string(&j).expect("complex serialises")
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// The `k`-simplices.
    pub fn simplices(&self, k: usize) -> impl Iterator<Item = &Simplex> {
        self.faces.get(k).into_iter().flatten()
    }

    /// `β_k`: number of `k`-simplices.
    pub fn count(&self, k: usize) -> usize {
        self.faces.get(k).map_or(0, BTreeSet::len)
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        !s.is_empty() && self.faces.get(s.len() - 1).is_some_and(|f| f.contains(s))
    }

    /// Simplices that are not a face of another simplex.
    pub fn principal(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for k in 0..self.faces.len() {
            for s in &self.faces[k] {
                if self.cofaces(s).next().is_none() {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// Simplices one dimension up that contain `s`.
    fn cofaces<'a>(&'a self, s: &'a [u32]) -> impl Iterator<Item = &'a Simplex> + 'a {
        self.simplices(s.len()).filter(move |t| s.iter().all(|v| t.binary_search(v).is_ok()))
    }

    /// All simplices of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> SimplicialComplex {
        SimplicialComplex::from_faces(self.faces.iter().take(k + 1).cloned().collect())
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.faces.iter().flatten().all(|s| other.contains(s))
    }

    /// Removes the given simplices together with everything containing them.
    pub fn without(&self, removed: &[Simplex]) -> Result<SimplicialComplex> {
        let mut removed: Vec<Simplex> = removed
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s.sort_unstable();
                s
            })
            .collect();
        for s in &removed {
            if !self.contains(s) {
                return Err(Error::MissingSimplex(s.clone()));
            }
        }
        removed.sort();
        let faces = self
            .faces
            .iter()
            .map(|level| level.iter().filter(|t| !removed.iter().any(|s| s.iter().all(|v| t.binary_search(v).is_ok()))).cloned().collect())
            .collect();
        Ok(SimplicialComplex::from_faces(faces))
    }

    /// The subcomplex generated by a collection of simplices of `self`.
    pub fn generated<'a>(&self, simplices: impl IntoIterator<Item = &'a Simplex>) -> Result<SimplicialComplex> {
        let mut faces = vec![BTreeSet::new(); self.faces.len()];
        for s in simplices {
            if !self.contains(s) {
                return Err(Error::MissingSimplex(s.clone()));
            }
            all_faces(s, &mut faces);
        }
        Ok(SimplicialComplex::from_faces(faces))
    }

    /// Simplices of `self` not in `other`.
    pub fn difference(&self, other: &SimplicialComplex) -> Vec<Simplex> {
        self.faces.iter().flatten().filter(|s| !other.contains(s)).cloned().collect()
    }

    /// `∂D = D ∩ ⟨C − D⟩` for `self = D` inside `c`.
    pub fn boundary_in(&self, c: &SimplicialComplex) -> Result<SimplicialComplex> {
        let rest = c.difference(self);
        let outside = c.generated(&rest)?;
        let faces = self.faces.iter().map(|level| level.iter().filter(|s| outside.contains(s)).cloned().collect()).collect();
        Ok(SimplicialComplex::from_faces(faces))
    }

    /// Number of simplices one dimension up containing `sigma`.
    pub fn degree(&self, sigma: &[u32]) -> Result<usize> {
        let mut s = sigma.to_vec();
        s.sort_unstable();
        if !self.contains(&s) {
            return Err(Error::MissingSimplex(s));
        }
        Ok(self.cofaces(&s).count())
    }

    /// Degree of `sigma` relative to `self`: zero when `sigma` is absent.
    fn relative_degree(&self, sigma: &[u32]) -> usize {
        if self.contains(sigma) {
            self.cofaces(sigma).count()
        } else {
            0
        }
    }

    /// Every `(d-1)`-simplex lies in exactly `n` top simplices.
    pub fn is_n_regular(&self, n: usize) -> bool {
        match self.dim() {
            Some(d) if d > 0 => self.faces[d - 1].iter().all(|s| self.cofaces(s).count() == n),
            _ => false,
        }
    }

    /// `Σ (-1)^k β_k` over `k ≤ up_to`.
    pub fn euler_characteristic(&self, up_to: usize) -> i64 {
        (0..self.faces.len().min(up_to + 1)).map(|k| if k % 2 == 0 { 1 } else { -1 } * self.count(k) as i64).sum()
    }

    /// A graph without loops or multiple edges, as a 1-dimensional complex.
    pub fn from_graph(g: &CosetGraph) -> Result<SimplicialComplex> {
        let mut edges = BTreeSet::new();
        for (u, _, v) in g.edges() {
            if u == v {
                return invalid(format!("graph has a loop at {u}"));
            }
            if !edges.insert(vec![u.min(v), u.max(v)]) {
                return invalid(format!("graph has parallel edges between {u} and {v}"));
            }
        }
        let mut faces = vec![(0..g.vertex_count() as u32).map(|v| vec![v]).collect::<BTreeSet<_>>()];
        if !edges.is_empty() {
            faces.push(edges);
        }
        Ok(SimplicialComplex { faces })
    }
}

/// `D` spans `C`: it contains the `(d-1)`-skeleton of `C`, and its principal
/// simplices are principal in `C`.
pub fn is_spanning_subcomplex(d: &SimplicialComplex, c: &SimplicialComplex) -> bool {
    let Some(top) = c.dim() else { return d.is_empty() };
    if !d.is_subcomplex_of(c) {
        return false;
    }
    let skeleton = top == 0 || c.skeleton(top - 1).is_subcomplex_of(d);
    skeleton && d.principal().iter().all(|s| c.cofaces(s).next().is_none())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Contractibility {
    /// Collapses to a point, so contractible.
    Collapsible,
    /// Reduced homology vanishes but the greedy collapse got stuck.
    HomologyTrivialButUncollapsed,
    NotContractible,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Certificate {
    pub verdict: Contractibility,
    /// Elementary collapses performed.
    pub collapses: usize,
    /// Rank of reduced homology in each dimension.
    pub reduced_betti: Vec<usize>,
    /// Torsion coefficients of integral homology in each dimension.
    pub torsion: Vec<Vec<u64>>,
}

impl Certificate {
    pub fn homology_trivial(&self) -> bool {
        self.reduced_betti.iter().all(|&b| b == 0) && self.torsion.iter().all(Vec::is_empty)
    }
}

/// Greedy elementary collapses: the lowest-dimensional free face first,
/// least in lexicographic order among those. Returns the number of collapses
/// and what is left.
pub fn greedy_collapse(c: &SimplicialComplex) -> (usize, SimplicialComplex) {
    let mut cur = c.clone();
    let mut steps = 0;
    'outer: loop {
        for k in 0..cur.faces.len().saturating_sub(1) {
            let found = cur.faces[k].iter().find_map(|tau| {
                let mut up = cur.cofaces(tau);
                let sigma = up.next()?;
                (up.next().is_none() && cur.cofaces(sigma).next().is_none()).then(|| (tau.clone(), sigma.clone()))
            });
            if let Some((tau, sigma)) = found {
                cur.faces[k].remove(&tau);
                cur.faces[k + 1].remove(&sigma);
                cur = SimplicialComplex::from_faces(cur.faces);
                steps += 1;
                continue 'outer;
            }
        }
        return (steps, cur);
    }
}

/// Diagonalises an integer matrix by row and column operations and returns
/// the absolute values of the nonzero diagonal entries.
fn diagonal_form(mut m: Vec<Vec<i128>>) -> Vec<u64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut p = 0;
    while p < rows && p < cols {
        // smallest nonzero entry of the remaining block as pivot
        let Some((r, c)) = (p..rows).flat_map(|r| (p..cols).map(move |c| (r, c))).filter(|&(r, c)| m[r][c] != 0).min_by_key(|&(r, c)| m[r][c].abs()) else {
            break;
        };
        m.swap(p, r);
        for row in m.iter_mut() {
            row.swap(p, c);
        }
        let mut clean = true;
        for r in p + 1..rows {
            let q = m[r][p] / m[p][p];
            if q != 0 {
                let (above, below) = m.split_at_mut(r);
                for (x, y) in below[0][p..].iter_mut().zip(&above[p][p..]) {
                    *x -= q * y;
                }
            }
            clean &= m[r][p] == 0;
        }
        for c in p + 1..cols {
            let q = m[p][c] / m[p][p];
            if q != 0 {
                for row in m.iter_mut().skip(p) {
                    row[c] -= q * row[p];
                }
            }
            clean &= m[p][c] == 0;
        }
        if clean {
            out.push(m[p][p].unsigned_abs() as u64);
            p += 1;
        }
    }
    out
}

/// Boundary matrix from `k`-chains to `(k-1)`-chains, rows indexed by
/// `(k-1)`-simplices. For `k = 0` it is the augmentation.
fn boundary_matrix(c: &SimplicialComplex, k: usize) -> Vec<Vec<i128>> {
    let cols: Vec<&Simplex> = c.simplices(k).collect();
    if k == 0 {
        return vec![vec![1; cols.len()]];
    }
    let index: BTreeMap<&Simplex, usize> = c.simplices(k - 1).enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = vec![vec![0i128; cols.len()]; index.len()];
    for (j, s) in cols.iter().enumerate() {
        for (skip, f) in facets(s).enumerate() {
            m[index[&f]][j] = if skip % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// Collapse first; whatever is left is judged by its integral homology.
pub fn contractibility_certificate(c: &SimplicialComplex) -> Certificate {
    let (collapses, rest) = greedy_collapse(c);
    let top = c.faces.len();
    let diag: Vec<Vec<u64>> = (0..=top).map(|k| if k < top { diagonal_form(boundary_matrix(c, k)) } else { Vec::new() }).collect();
    let mut reduced_betti = Vec::with_capacity(top);
    let mut torsion = Vec::with_capacity(top);
    for k in 0..top {
        reduced_betti.push(c.count(k) - diag[k].len() - diag[k + 1].len());
        torsion.push(diag[k + 1].iter().copied().filter(|&d| d > 1).collect());
    }
    let point = rest.faces.len() == 1 && rest.count(0) == 1;
    let mut cert = Certificate { verdict: Contractibility::NotContractible, collapses, reduced_betti, torsion };
    if c.is_empty() {
        return cert;
    }
    cert.verdict = if point {
        Contractibility::Collapsible
    } else if cert.homology_trivial() {
        Contractibility::HomologyTrivialButUncollapsed
    } else {
        Contractibility::NotContractible
    };
    cert
}

fn require_contractible_spanning(c: &SimplicialComplex, d: &SimplicialComplex) -> Result<()> {
    if !d.is_subcomplex_of(c) {
        return Err(Error::Precondition("D is not a subcomplex of C".into()));
    }
    if !is_spanning_subcomplex(d, c) {
        return Err(Error::Precondition("D is not a spanning subcomplex of C".into()));
    }
    if contractibility_certificate(d).verdict == Contractibility::NotContractible {
        return Err(Error::Precondition("D is not contractible".into()));
    }
    Ok(())
}

/// Number of top simplices of `C` outside `D`.
pub fn bouquet_count_direct(c: &SimplicialComplex, d: &SimplicialComplex) -> Result<usize> {
    require_contractible_spanning(c, d)?;
    let top = c.dim().unwrap_or(0);
    Ok(c.count(top) - d.count(top))
}

/// `F^k(liminf D_i) = ⋃_i ⋂_{j≥i} F^k(D_j)`. For a finite sequence this is
/// the last term, but it is computed literally.
pub fn liminf(filtration: &[SimplicialComplex]) -> SimplicialComplex {
    let top = filtration.iter().map(|d| d.faces.len()).max().unwrap_or(0);
    let mut faces = vec![BTreeSet::new(); top];
    for i in 0..filtration.len() {
        for s in filtration[i].faces.iter().flatten() {
            if filtration[i..].iter().all(|d| d.contains(s)) {
                faces[s.len() - 1].insert(s.clone());
            }
        }
    }
    SimplicialComplex::from_faces(faces)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BouquetFormula {
    /// The expression at each step of the filtration.
    pub values: Vec<Ratio<i64>>,
    /// The value at the last step, which must be an integer.
    pub limit: i64,
}

/// `(1/(d+1))·(n·β_{d-1}(D_i) − deg_{⟨D−D_i⟩} F^{d-1}(∂D_i)) − β_d(D_i)`
/// along a filtration whose lim inf is `D`.
pub fn bouquet_count_formula(c: &SimplicialComplex, n: usize, d: &SimplicialComplex, filtration: &[SimplicialComplex]) -> Result<BouquetFormula> {
    let top = c.dim().ok_or_else(|| Error::Precondition("empty complex".into()))?;
    if top == 0 || !c.is_n_regular(n) {
        return Err(Error::NotRegular(n));
    }
    require_contractible_spanning(c, d)?;
    if filtration.is_empty() {
        return Err(Error::Precondition("empty filtration".into()));
    }
    if filtration.iter().any(|di| !di.is_subcomplex_of(d)) {
        return Err(Error::Precondition("filtration leaves D".into()));
    }
    if liminf(filtration) != *d {
        return Err(Error::Precondition("filtration does not converge to D".into()));
    }
    let mut values = Vec::with_capacity(filtration.len());
    for di in filtration {
        let outside = d.generated(&d.difference(di))?;
        let boundary = di.boundary_in(c)?;
        let deg: usize = boundary.simplices(top - 1).map(|s| outside.relative_degree(s)).sum();
        let num = (n * di.count(top - 1)) as i64 - deg as i64;
        values.push(Ratio::new(num, top as i64 + 1) - di.count(top) as i64);
    }
    let last = *values.last().expect("nonempty filtration");
    if !last.is_integer() {
        return Err(Error::Precondition(format!("formula stabilised at the non-integer {last}")));
    }
    Ok(BouquetFormula { values, limit: last.to_integer() })
}

/// The full simplex on `0..=k` with all its faces.
pub fn simplex(k: usize) -> SimplicialComplex {
    SimplicialComplex::from_principal(&[(0..=k as u32).collect()]).expect("valid simplex")
}

/// Boundary of the `k`-simplex.
pub fn simplex_boundary(k: usize) -> SimplicialComplex {
    let full: Simplex = (0..=k as u32).collect();
    SimplicialComplex::from_principal(&facets(&full).collect::<Vec<_>>()).expect("valid facets")
}

pub fn octahedron_boundary() -> SimplicialComplex {
    // antipodal pairs (0,1), (2,3), (4,5)
    let mut tri = Vec::new();
    for x in [0, 1] {
        for y in [2, 3] {
            for z in [4, 5] {
                tri.push(vec![x, y, z]);
            }
        }
    }
    SimplicialComplex::from_principal(&tri).expect("valid octahedron")
}

pub fn icosahedron_boundary() -> SimplicialComplex {
    // vertex 0 on top, 1..=5 upper ring, 6..=10 lower ring, 11 at the bottom
    let mut tri = Vec::new();
    for i in 0..5u32 {
        let (u, u1) = (1 + i, 1 + (i + 1) % 5);
        let (l, l1) = (6 + i, 6 + (i + 1) % 5);
        tri.push(vec![0, u, u1]);
        tri.push(vec![u, u1, l]);
        tri.push(vec![u1, l, l1]);
        tri.push(vec![11, l, l1]);
    }
    SimplicialComplex::from_principal(&tri).expect("valid icosahedron")
}

/// A spanning tree of a graph complex: all vertices and the edges of a
/// breadth-first tree from vertex 0.
pub fn spanning_tree(c: &SimplicialComplex) -> Result<SimplicialComplex> {
    if c.dim() != Some(1) {
        return invalid("spanning trees are for 1-dimensional complexes");
    }
    let nv = c.count(0);
    let verts: Vec<u32> = c.simplices(0).map(|s| s[0]).collect();
    let index: BTreeMap<u32, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![Vec::new(); nv];
    for e in c.simplices(1) {
        adj[index[&e[0]]].push(e[1]);
        adj[index[&e[1]]].push(e[0]);
    }
    let mut seen = vec![false; nv];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([verts[0]]);
    let mut edges: Vec<Simplex> = verts.iter().map(|&v| vec![v]).collect();
    while let Some(u) = queue.pop_front() {
        for &v in &adj[index[&u]] {
            if !std::mem::replace(&mut seen[index[&v]], true) {
                edges.push(vec![u.min(v), u.max(v)]);
                queue.push_back(v);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Disconnected);
    }
    SimplicialComplex::from_principal(&edges)
}
