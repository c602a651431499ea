//! Acceptance suite. Each criterion prints one PASS/FAIL line with its
//! runtime; the test fails if any criterion fails.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use stallings::complexes::{
    bouquet_count_direct, bouquet_count_formula, contractibility_certificate, icosahedron_boundary, octahedron_boundary, simplex, simplex_boundary,
    Contractibility, SimplicialComplex,
};
use stallings::coset_graph::{AbelianQuotient, Completion, PermutationQuotient};
use stallings::growth::pathological::{build_pathological, constructed_growth, pathological_transversals};
use stallings::growth::{cogrowth_in, equivalence_probe, r_series, relation_checks, rho, witness_bound_check, Comparison, DEFAULT_BUDGET};
use stallings::intersection::{burns_audit, cogrowth_product_check, intersect, FiberProduct};
use stallings::membership::{contains, distance_to_transversal, rewrite, Decision, GwpInstance, GwpSolver, Oracle, OracleKind, DEFAULT_GWP_BUDGET};
use stallings::random::{finite_index_graph, rng, simple_regular_graph, sphere, subgroup_generators, word_up_to};
use stallings::rank_formula::{rank_estimate, Half};
use stallings::transversal::{schreier_basis, schreier_formula, Strategy, Transversal};
use stallings::words::reduced_words_of_length;
use stallings::{CosetGraph, Word};

type Check = fn() -> String;
type WitnessCase<'a> = (&'a str, Box<dyn Fn(&Word) -> stallings::growth::WitnessBoundReport>, &'a str, Vec<i64>);

fn say(line: &str) {
    // bypass the test harness capture so the lines land in the log
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{line}");
}

fn run(number: usize, name: &str, limit: Option<Duration>, check: Check) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(check));
    let took = start.elapsed();
    let (ok, detail) = match outcome {
        Ok(detail) => match limit {
            Some(l) if took > l => (false, format!("{detail}; over the {:.0?} limit", l)),
            _ => (true, detail),
        },
        Err(e) => {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            (false, msg.unwrap_or_else(|| "panicked".into()))
        }
    };
    say(&format!("criterion {number:2} {}: {name}: {detail} ({:.2?})", if ok { "PASS" } else { "FAIL" }, took));
    ok
}

fn even_length() -> CosetGraph {
    CosetGraph::from_permutations(&[vec![1, 0], vec![1, 0]]).unwrap()
}

/// The subgroups shared by several criteria.
fn suite() -> Vec<(&'static str, CosetGraph)> {
    vec![("even-length", even_length()), ("<a>", graph(2, "a")), ("<aa,bb>", graph(2, "aa,bb")), ("<abAB>", graph(2, "abAB"))]
}

fn schreier_exactness() -> String {
    let mut r = rng(101);
    let mut sizes = Vec::new();
    for k in 0..24 {
        let n = 2 + k % 2;
        let g = finite_index_graph(&mut r, n, 8);
        let m = g.vertex_count();
        let t = Transversal::of_graph(&g, Strategy::ShortLexBfs).unwrap();
        let basis = schreier_basis(&t);
        // rank from the edge count alone: E - V + 1
        let e = (0..m as u32).map(|v| (0..n).filter(|&k| g.target(v, stallings::Letter::new(k, false)).is_some()).count()).sum::<usize>();
        assert_eq!(e + 1 - m, 1 + (n - 1) * m);
        assert_eq!(basis.len(), 1 + (n - 1) * m, "n = {n}, m = {m}");
        assert_eq!(g.cyclomatic_rank(), basis.len());
        assert_eq!(schreier_formula(n, m), basis.len());
        sizes.push(m);
    }
    format!("24 graphs, index {}..={}", sizes.iter().min().unwrap(), sizes.iter().max().unwrap())
}

fn stabilization() -> String {
    let mut r = rng(202);
    let mut ranks = Vec::new();
    for _ in 0..24 {
        let gens = subgroup_generators(&mut r, 2, 4, 8);
        let g = CosetGraph::from_generators(2, &gens).unwrap().core();
        let radius = g.radius();
        let horizon = radius + 6;
        let est = rank_estimate(&Transversal::of_graph(&g, Strategy::ShortLexBfs).unwrap(), horizon).unwrap();
        let rank = g.cyclomatic_rank() as i64;
        // independent rank: fold the generators naively
        let mut f = NaiveFolder::new();
        for w in &gens {
            f.add_loop(&signed(w));
        }
        assert_eq!(f.rank() as i64, rank);
        for i in radius + 1..=horizon {
            assert_eq!(est.values[i], Half::from_int(rank), "generators {gens:?}, radius {i}");
        }
        ranks.push(rank);
    }
    format!("24 subgroups, ranks {:?}", ranks.iter().collect::<BTreeSet<_>>())
}

fn commutator_subgroup() -> String {
    let space = AbelianQuotient::commutator(2);
    let volumes = cogrowth_in(&space, 31).unwrap().integers().unwrap();
    let grid = grid_ball(31);
    assert_eq!(volumes, grid);
    let t = Transversal::minimal(&space, 31).unwrap();
    let r = r_series(&t, 30).unwrap();
    for i in 1..=30usize {
        let ii = i as i64;
        assert_eq!(grid[i], 2 * ii * ii + 2 * ii + 1);
        assert_eq!(doubled_r(2, &grid, i), 4 * ii * ii);
        assert_eq!(r.values[i], Half::from_int(2 * ii * ii), "r({i})");
    }
    format!("Γ(30) = {}, r(30) = {}", volumes[30], r.values[30])
}

fn odd_rank_growth() -> String {
    let mut cells = 0;
    for (name, g) in suite() {
        let ball = coset_ball(&g, 3);
        for i in 0..=3usize {
            let rho = rho(&g, i).unwrap() as i64;
            assert_eq!(rho, ball.ranks[i], "{name}: ball rank at {i}");
            let rk = rank_growth_oracle(&g, 2 * i + 1) as i64;
            assert_eq!(rho, rk, "{name}: i = {i}");
            cells += 1;
        }
    }
    format!("{cells} cells agree")
}

fn relations() -> String {
    for (name, g) in suite() {
        let report = relation_checks(&Completion::new(&g), 6, DEFAULT_BUDGET).unwrap();
        let ball = coset_ball(&g, 8);
        for row in &report.rows {
            let i = row.i;
            assert_eq!(row.rho as i64, ball.ranks[i], "{name}: ρ({i})");
            assert_eq!(row.r.doubled(), doubled_r(2, &ball.volumes, i), "{name}: r({i})");
            assert!(2 * ball.ranks[i] <= row.r.doubled() && row.r.doubled() <= 2 * ball.ranks[i + 1], "{name}: sandwich at {i}");
            if i >= 1 {
                let gamma = |k: usize| ball.volumes[k] - ball.volumes[k - 1];
                let lhs = doubled_r(2, &ball.volumes, i) - doubled_r(2, &ball.volumes, i - 1);
                assert_eq!(lhs, 3 * gamma(i) - gamma(i + 1), "{name}: difference at {i}");
            }
        }
        assert!(report.sandwich_holds() && report.difference_holds(), "{name}");
    }
    let z2 = relation_checks(&AbelianQuotient::commutator(2), 1, DEFAULT_BUDGET).unwrap();
    let row = &z2.rows[1];
    assert_eq!((row.all_out_edges, row.x_out_edges), (12, 6));
    assert!(row.excess_all_out && !row.excess_x_out);
    format!("4 subgroups to i = 6; plane at i = 1: all_out {} holds, x_out {} fails", row.all_out_edges, row.x_out_edges)
}

fn witness_bound() -> String {
    let s3 = vec![vec![1, 0, 2], vec![0, 2, 1]];
    let cases: Vec<WitnessCase> = vec![
        ("Z^2", Box::new(|h| witness_bound_check(&AbelianQuotient::commutator(2), h, 15).unwrap()), "abAB", grid_ball(15)),
        (
            "Z/2",
            Box::new(|h| witness_bound_check(&PermutationQuotient::new(vec![vec![1, 0], vec![1, 0]]).unwrap(), h, 15).unwrap()),
            "aa",
            (0..=15).map(|i| if i == 0 { 1 } else { 2 }).collect(),
        ),
        (
            "S3",
            Box::new(move |h| witness_bound_check(&PermutationQuotient::new(s3.clone()).unwrap(), h, 15).unwrap()),
            "aa",
            permutation_ball(&[vec![1, 0, 2], vec![0, 2, 1]], 15),
        ),
    ];
    let mut out = Vec::new();
    for (name, check, witness, oracle) in cases {
        let report = check(&Word::parse(2, witness).unwrap());
        for row in &report.rows {
            assert_eq!(row.ball_minimal, oracle[row.i], "{name}: Γ({})", row.i);
            assert!(row.holds_minimal && row.holds_dfs, "{name} at {}", row.i);
        }
        out.push(format!("{name} (m = {})", report.m));
    }
    format!("holds to i = 15 for {}", out.join(", "))
}

fn pathological() -> String {
    let pg = build_pathological(8, 6).unwrap();
    assert!(pg.max_degree() <= 4);
    let (lin, exp) = pathological_transversals(&pg).unwrap();
    let gl = constructed_growth(&lin);
    let ge = constructed_growth(&exp);
    let n = pg.graph.vertex_count();
    assert_eq!(gl, (1..=n as i64).collect::<Vec<_>>());
    // the linear tree's depths, recomputed from its parent pointers
    let mut depth = vec![0usize; n];
    for v in 0..n as u32 {
        let mut u = v;
        while let Some(p) = lin.tree_parent(u) {
            depth[v as usize] += 1;
            u = p;
        }
    }
    let mut seen = depth.clone();
    seen.sort();
    assert_eq!(seen, (0..n).collect::<Vec<_>>());
    let window = ge.len();
    assert!((1..window).all(|i| ge[i] > gl[i]));
    assert_eq!(*ge.last().unwrap(), n as i64);
    let probe = equivalence_probe(&gl[..window], &ge, 4);
    assert_eq!(probe.verdict, Comparison::LeftBelow);
    format!("{n} vertices, exponential tree height {}, {}", window - 1, probe.describe())
}

fn intersections() -> String {
    let mut r = rng(808);
    let mut agreements = 0;
    let mut pairs = Vec::new();
    for _ in 0..20 {
        let g1 = CosetGraph::from_generators(2, &subgroup_generators(&mut r, 2, 3, 6)).unwrap();
        let g2 = CosetGraph::from_generators(2, &subgroup_generators(&mut r, 2, 3, 6)).unwrap();
        pairs.push((g1, g2));
    }
    pairs.push((graph(2, "aa"), graph(2, "aaa")));
    pairs.push((even_length(), graph(2, "a,bab")));
    for (g1, g2) in &pairs {
        let p = FiberProduct::new(g1, g2).unwrap();
        let h = intersect(g1, g2).unwrap();
        for _ in 0..10 {
            // half the words are products of generators, so membership is not rare
            let w = if agreements % 2 == 0 { word_up_to(&mut r, 2, 10) } else { loop_word(&mut r, g1, g2) };
            let v = signed(&w);
            let both = member(g1, &v) && member(g2, &v);
            assert_eq!(p.graph.accepts(&w), both, "{w}");
            assert_eq!(contains(&h, &w), both, "{w}");
            agreements += 1;
        }
    }
    let mut rows = 0;
    for (g1, g2) in pairs.iter().take(20) {
        let table = cogrowth_product_check(g1, g2, 10).unwrap();
        assert!(table.iter().all(|row| row.holds));
        let oracle = coset_ball(&intersect(g1, g2).unwrap(), 6);
        for (row, &v) in table.iter().zip(&oracle.volumes) {
            assert_eq!(row.intersection, v);
        }
        rows += table.len();
    }
    let burns = burns_audit(&graph(2, "aa"), &graph(2, "aaa"), 7, DEFAULT_BUDGET).unwrap();
    for row in &burns.rows {
        let (h, k) = (row.rk_left as i64, row.rk_right as i64);
        assert_eq!(row.literal_bound, 1 + 2 * (h - 1) * (k - 1) - h.min(k));
        assert_eq!(row.rk, rank_growth_oracle(&intersect(&graph(2, "aa"), &graph(2, "aaa")).unwrap(), row.i));
    }
    assert_eq!(burns.literal_failures(), vec![6, 7]);
    assert!(burns.reference_failures().is_empty() && burns.reference_holds);
    format!(
        "{agreements} membership agreements, {rows} cogrowth rows over 20 pairs; <aa>/<aaa>: literal form fails at i = {:?}, reference form holds",
        burns.literal_failures()
    )
}

/// A random product of loops at the base of `g1` or `g2`.
fn loop_word(r: &mut rand_chacha::ChaCha8Rng, g1: &CosetGraph, g2: &CosetGraph) -> Word {
    use rand::Rng;
    let g = if r.gen_bool(0.5) { g1 } else { g2 };
    let t = Transversal::of_graph(g, Strategy::ShortLexBfs).unwrap();
    let basis = schreier_basis(&t);
    let mut w = Word::identity(2);
    if basis.is_empty() {
        return w;
    }
    for _ in 0..r.gen_range(1..=3) {
        let b = &basis.elements()[r.gen_range(0..basis.len())].word;
        let b = if r.gen_bool(0.5) { b.clone() } else { b.invert() };
        w = w.concat(&b).unwrap();
    }
    w
}

fn word_problem() -> String {
    let oracle = Oracle { kind: OracleKind::Gamma, values: (0..8).map(|i| Half::from_int(2 * i + 1)).collect() };
    let inst = GwpInstance::new(2, Word::parse_list(2, "abAB").unwrap(), Word::parse_list(2, "a").unwrap(), oracle).unwrap();
    let mut solver = GwpSolver::new(inst, DEFAULT_GWP_BUDGET).unwrap();
    let (mut total, mut members, mut nonempty) = (0, 0, 0);
    for len in 0..=6 {
        for w in reduced_words_of_length(2, len) {
            let report = solver.decide(&w).unwrap();
            let expected = exponent_sum(&signed(&w), 1) == 0;
            assert_ne!(report.decision, Decision::Inconclusive, "{w}");
            assert_eq!(report.decision == Decision::Member, expected, "{w}");
            total += 1;
            members += usize::from(expected);
            nonempty += usize::from(len > 0);
        }
    }
    let certified = solver.certified().to_vec();
    for (i, &v) in certified.iter().enumerate() {
        assert_eq!(v, 2 * i as i64 + 1);
    }
    format!("{total} words ({nonempty} nonempty), {members} members, certified {certified:?}")
}

fn complexes() -> String {
    let bouquet = |c: &SimplicialComplex, n: usize| {
        let first = c.simplices(c.dim().unwrap()).next().unwrap().clone();
        let d = c.without(&[first]).unwrap();
        assert_eq!(contractibility_certificate(&d).verdict, Contractibility::Collapsible);
        let direct = bouquet_count_direct(c, &d).unwrap();
        let formula = bouquet_count_formula(c, n, &d, &[d.skeleton(0), d.clone()]).unwrap().limit;
        (direct as i64, formula)
    };
    assert_eq!(bouquet(&simplex_boundary(3), 2), (1, 1));
    assert_eq!(bouquet(&octahedron_boundary(), 2), (1, 1));
    let tri = simplex(2);
    assert_eq!(bouquet_count_direct(&tri, &tri).unwrap(), 0);
    assert_eq!(bouquet_count_formula(&tri, 1, &tri, std::slice::from_ref(&tri)).unwrap().limit, 0);

    let mut regular: Vec<(SimplicialComplex, usize)> =
        vec![(simplex_boundary(2), 2), (simplex_boundary(3), 2), (simplex_boundary(4), 2), (octahedron_boundary(), 2), (icosahedron_boundary(), 2), (tri, 1)];
    let mut r = rng(1010);
    for k in 0..20 {
        let (n, m) = if k < 14 { (2, 7 + k % 6) } else { (3, 12) };
        let g = simple_regular_graph(&mut r, n, m, 100_000).unwrap();
        let c = SimplicialComplex::from_graph(&g).unwrap();
        let d = kruskal_tree(&c);
        assert_eq!(bouquet_count_direct(&c, &d).unwrap(), g.cyclomatic_rank());
        assert_eq!(bouquet_count_formula(&c, 2 * n, &d, &[d.skeleton(0), d.clone()]).unwrap().limit, g.cyclomatic_rank() as i64);
        regular.push((c, 2 * n));
    }
    for steps in [3, 10, 30] {
        regular.push((sphere(&mut r, steps), 2));
    }
    for (c, n) in &regular {
        let d = c.dim().unwrap();
        assert!(c.is_n_regular(*n));
        assert_eq!(n * c.count(d - 1), (d + 1) * c.count(d));
    }
    format!("bouquet counts match; incidence identity on {} regular complexes", regular.len())
}

/// Spanning tree by union-find over the edges in lexicographic order.
fn kruskal_tree(c: &SimplicialComplex) -> SimplicialComplex {
    let verts: Vec<u32> = c.simplices(0).map(|s| s[0]).collect();
    let mut parent: Vec<u32> = (0..=*verts.iter().max().unwrap()).collect();
    fn find(p: &mut [u32], v: u32) -> u32 {
        if p[v as usize] != v {
            let r = find(p, p[v as usize]);
            p[v as usize] = r;
        }
        p[v as usize]
    }
    let mut principal: Vec<Vec<u32>> = verts.iter().map(|&v| vec![v]).collect();
    for e in c.simplices(1) {
        let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
        if a != b {
            parent[a as usize] = b;
            principal.push(e.clone());
        }
    }
    SimplicialComplex::from_principal(&principal).unwrap()
}

fn rewriting() -> String {
    let mut subgroups = suite();
    subgroups.push(("<abAB,aab>", graph(2, "abAB,aab")));
    subgroups.push(("index 5 in F3", finite_index_graph(&mut rng(5), 3, 5)));
    let mut r = rng(1111);
    let mut factors = 0;
    for (name, g) in &subgroups {
        let n = g.rank();
        let t = Transversal::of_graph(g, Strategy::ShortLexBfs).unwrap();
        let basis = schreier_basis(&t);
        let labels: HashSet<Vec<i32>> = t.labels().iter().map(signed).collect();
        for _ in 0..500 {
            let w = word_up_to(&mut r, n, 12);
            let rw = rewrite(&t, &basis, &w).unwrap();
            assert_eq!(rw.product(&basis), w, "{name}: {w}");
            let d = distance_to_transversal(&t, &w).unwrap();
            assert_eq!(d, w.len() - longest_prefix_in(g, &labels, &signed(&w)), "{name}: {w}");
            assert!(rw.len() <= d && d <= w.len(), "{name}: {w}");
            assert_eq!(rw.remainder, t.coset_map(&w).unwrap(), "{name}: {w}");
            // the remainder lies in T and in the coset of w
            assert_eq!(longest_prefix_in(g, &labels, &signed(&rw.remainder)), rw.remainder.len());
            assert!(member(g, &signed(&w.concat(&rw.remainder.invert()).unwrap())), "{name}: {w}");
            factors += rw.len();
        }
    }
    format!("{} subgroups x 500 words, {factors} factors in total", subgroups.len())
}

/// Longest prefix of `w` in the transversal: graph-vertex labels, plus words
/// that leave the graph along a missing edge right after a label.
fn longest_prefix_in(g: &CosetGraph, labels: &HashSet<Vec<i32>>, w: &[i32]) -> usize {
    let mut best = 0;
    for p in 0..=w.len() {
        let prefix = &w[..p];
        let inside = labels.contains(prefix) || (0..p).any(|q| labels.contains(&w[..q]) && walk(g, &w[..q]).is_some() && walk(g, &w[..=q]).is_none());
        if inside {
            best = p;
        } else {
            break;
        }
    }
    best
}

#[test]
fn acceptance() {
    let s = |secs: u64| Some(Duration::from_secs(secs));
    let criteria: [(&str, Option<Duration>, Check); 11] = [
        ("Schreier formula on random finite-index subgroups", s(1), schreier_exactness),
        ("rank estimate stabilizes at the core rank", s(5), stabilization),
        ("commutator subgroup of F2 against the grid", s(1), commutator_subgroup),
        ("ball rank equals odd rank growth", s(30), odd_rank_growth),
        ("sandwich, difference identity and out-edge counters", None, relations),
        ("witness bound for Z^2, Z/2 and S3", None, witness_bound),
        ("linear and exponential transversals of one graph", s(5), pathological),
        ("intersection membership, cogrowth product and Burns audit", None, intersections),
        ("generalized word problem in Z^2 for <a>", s(60), word_problem),
        ("bouquet counts and incidence identity", s(5), complexes),
        ("rewriting in the Schreier basis", s(5), rewriting),
    ];
    let mut failed = Vec::new();
    for (k, (name, limit, check)) in criteria.into_iter().enumerate() {
        if !run(k + 1, name, limit, check) {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
