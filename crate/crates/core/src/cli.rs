//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage, 2 invalid input, 3 inconclusive within
//! the horizon or budget.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::complexes::{self, Contractibility, SimplicialComplex};
use crate::coset_graph::CosetGraph;
use crate::error::{Error, Result};
use crate::growth::{self, pathological, DEFAULT_BUDGET};
use crate::intersection;
use crate::membership::{self, GwpInstance, GwpSolver, DEFAULT_GWP_BUDGET};
use crate::rank_formula::rank_estimate;
use crate::transversal::{schreier_basis, Strategy, Transversal};
use crate::words::Word;

#[derive(Parser, Debug)]
#[command(name = "stallings", version, about = "Coset graphs, transversals and growth series of subgroups of free groups")]
struct Cli {
    /// Enumeration budget for brute-force series (words charged per call).
    #[arg(long, global = true, env = "STALLINGS_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Seed for the random generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build, fold, reduce or export coset graphs.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Transversal labels (ShortLex sorted) and the Schreier basis as JSON.
    Transversal {
        #[command(flatten)]
        subgroup: SubgroupArgs,
        #[arg(long, value_enum, default_value_t = StrategyArg::Shortlex)]
        strategy: StrategyArg,
    },
    /// Rank expression over growing tree balls, with a verdict line.
    Rank {
        #[command(flatten)]
        subgroup: SubgroupArgs,
        #[arg(long, default_value_t = 10)]
        horizon: usize,
    },
    /// Growth series as CSV: i,gamma,Gamma,r,rho,rk,count.
    Growth {
        #[command(flatten)]
        subgroup: SubgroupArgs,
        #[arg(long, default_value_t = 10)]
        horizon: usize,
        /// Treat the generators as relators and use their normal closure.
        #[arg(long)]
        normal: bool,
    },
    /// Prints "yes" if the word lies in the subgroup, "no" otherwise.
    Member {
        #[command(flatten)]
        subgroup: SubgroupArgs,
        #[arg(long)]
        word: String,
    },
    /// Writes the word as a product of Schreier basis elements and a
    /// transversal element, as JSON.
    Rewrite {
        #[command(flatten)]
        subgroup: SubgroupArgs,
        #[arg(long)]
        word: String,
    },
    /// Generalized word problem with a growth oracle.
    Gwp {
        /// Instance JSON: {"relators", "subgroup", "oracle": {"kind", "values"}}.
        #[arg(long)]
        instance: String,
        /// Words to decide: comma separated, or @file.
        #[arg(long)]
        words: String,
        /// Work allowed per certified radius.
        #[arg(long, default_value_t = DEFAULT_GWP_BUDGET)]
        level_budget: u64,
    },
    /// Intersection of two subgroups, with the rank-growth bound audit.
    Intersect {
        #[arg(short = 'n', long, default_value_t = 2)]
        rank: usize,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = 8)]
        horizon: usize,
    },
    /// The graph with a linear and an exponential spanning tree.
    Patho {
        #[arg(short, default_value_t = 8)]
        c: usize,
        #[arg(long, default_value_t = 6)]
        steps: usize,
        #[arg(long, default_value_t = 4)]
        c_max: i64,
    },
    /// Simplicial complexes.
    #[command(subcommand)]
    Complex(ComplexCommand),
    /// Seeded random instances.
    #[command(subcommand)]
    Random(RandomCommand),
}

#[derive(Subcommand, Debug)]
enum GraphCommand {
    /// Folds a wedge of generator loops.
    Build {
        #[command(flatten)]
        subgroup: SubgroupArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        export: Format,
    },
    /// Folds a graph JSON whose arcs may clash.
    Fold {
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        export: Format,
    },
    /// Core of a subgroup graph.
    Core {
        #[command(flatten)]
        subgroup: SubgroupArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        export: Format,
    },
    /// Re-emits a graph in another format.
    Export {
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
enum ComplexCommand {
    /// Checks that SUB spans COMPLEX.
    CheckSpanning {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        sub: String,
    },
    /// Contractibility certificate.
    Certify {
        #[arg(long)]
        complex: String,
    },
    /// Number of spheres in the bouquet.
    Bouquet {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        sub: String,
        #[arg(long, value_enum, default_value_t = Method::Direct)]
        method: Method,
    },
}

#[derive(Subcommand, Debug)]
enum RandomCommand {
    /// Random subgroup generators.
    Subgroup {
        #[arg(short = 'n', long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 4)]
        gens: usize,
        #[arg(long, default_value_t = 8)]
        len: usize,
    },
    /// Random triangulated sphere.
    Sphere {
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
}

#[derive(Args, Debug)]
struct SubgroupArgs {
    #[arg(short = 'n', long, default_value_t = 2)]
    rank: usize,
    /// Generators: comma separated, or @file.
    #[arg(short = 'g', long = "subgroup", alias = "generators", conflicts_with = "graph")]
    generators: Option<String>,
    /// A graph JSON file instead of generators.
    #[arg(long)]
    graph: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Shortlex,
    Dfs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Direct,
    Formula,
}

fn read_arg(text: &str) -> Result<String> {
    match text.strip_prefix('@') {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => Ok(text.to_string()),
    }
}

fn word_list(rank: usize, text: &str) -> Result<Vec<Word>> {
    let text = read_arg(text)?;
    text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(|s| Word::parse(rank, s)).collect()
}

impl SubgroupArgs {
    fn graph(&self) -> Result<CosetGraph> {
        match (&self.generators, &self.graph) {
            (_, Some(path)) => CosetGraph::from_json(&std::fs::read_to_string(path)?),
            (Some(gens), None) => CosetGraph::from_generators(self.rank, &word_list(self.rank, gens)?),
            (None, None) => Err(Error::InvalidInput("give --subgroup or --graph".into())),
        }
    }

    fn words(&self) -> Result<Vec<Word>> {
        match &self.generators {
            Some(gens) => word_list(self.rank, gens),
            None => Err(Error::InvalidInput("--normal needs relators given with --subgroup".into())),
        }
    }
}

fn render(g: &CosetGraph, format: Format) -> String {
    match format {
        Format::Json => g.to_json(),
        Format::Dot => g.to_dot(),
    }
}

fn complex_from(path: &str) -> Result<SimplicialComplex> {
    SimplicialComplex::from_json(&std::fs::read_to_string(path)?)
}

/// Outcome of a subcommand that ran to completion.
enum Outcome {
    Done,
    Inconclusive,
}

fn blank_on_budget<T: ToString>(r: Result<T>) -> Result<String> {
    match r {
        Ok(v) => Ok(v.to_string()),
        Err(Error::BudgetExceeded { .. }) => Ok(String::new()),
        Err(e) => Err(e),
    }
}

fn growth_csv(g: &CosetGraph, horizon: usize, budget: u64) -> Result<String> {
    let t = Transversal::of_graph(g, Strategy::ShortLexBfs)?;
    let (gamma, big) = growth::transversal_series(&t, horizon)?;
    let r = growth::r_series(&t, horizon)?;
    let mut out = String::from("i,gamma,Gamma,r,rho,rk,count\n");
    for i in 0..=horizon {
        let rho = growth::rho(g, i)?;
        let rk = blank_on_budget(growth::rank_growth(g, i, budget))?;
        let count = blank_on_budget(growth::subgroup_element_count(g, i, budget))?;
        writeln!(out, "{i},{},{},{},{rho},{rk},{count}", gamma.values[i], big.values[i], r.values[i]).unwrap();
    }
    Ok(out)
}

#[derive(Serialize)]
struct PathoJson<'a> {
    c: usize,
    steps: usize,
    graph: serde_json::Value,
    max_degree: usize,
    terminal_ties: &'a [usize],
    linear: Vec<i64>,
    exponential: Vec<i64>,
    probe: &'static str,
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome> {
    let budget = cli.budget;
    match cli.command {
        Command::Graph(cmd) => {
            let text = match cmd {
                GraphCommand::Build { subgroup, export } => render(&subgroup.graph()?, export),
                GraphCommand::Fold { input, export } => render(&CosetGraph::fold_json(&std::fs::read_to_string(input)?)?, export),
                GraphCommand::Core { subgroup, export } => render(&subgroup.graph()?.core(), export),
                GraphCommand::Export { input, format } => render(&CosetGraph::from_json(&std::fs::read_to_string(input)?)?, format),
            };
            writeln!(out, "{}", text.trim_end())?;
        }
        Command::Transversal { subgroup, strategy } => {
            let g = subgroup.graph()?;
            let strategy = match strategy {
                StrategyArg::Shortlex => Strategy::ShortLexBfs,
                StrategyArg::Dfs => Strategy::Dfs,
            };
            let t = Transversal::of_graph(&g, strategy)?;
            let mut labels: Vec<&Word> = t.labels().iter().collect();
            labels.sort_by(|a, b| a.shortlex_cmp(b));
            for w in labels {
                writeln!(out, "{w}")?;
            }
            writeln!(out, "{}", schreier_basis(&t).to_json())?;
        }
        Command::Rank { subgroup, horizon } => {
            let t = Transversal::of_graph(&subgroup.graph()?, Strategy::ShortLexBfs)?;
            let est = rank_estimate(&t, horizon)?;
            writeln!(out, "i,expression")?;
            for (i, v) in est.values.iter().enumerate() {
                writeln!(out, "{i},{v}")?;
            }
            writeln!(out, "{}", est.verdict_line())?;
        }
        Command::Growth { subgroup, horizon, normal } => {
            let g = if normal {
                let (g, exact) = membership::normal_quotient(subgroup.rank, &subgroup.words()?, horizon + 1, budget)?;
                if !exact {
                    writeln!(err, "warning: quotient is infinite or not closed within the horizon; the series is a probe, not a certified value")?;
                }
                g
            } else {
                subgroup.graph()?
            };
            write!(out, "{}", growth_csv(&g, horizon, budget)?)?;
        }
        Command::Member { subgroup, word } => {
            let g = subgroup.graph()?;
            let w = Word::parse(subgroup.rank, &word)?;
            writeln!(out, "{}", if membership::contains(&g, &w) { "yes" } else { "no" })?;
        }
        Command::Rewrite { subgroup, word } => {
            let t = Transversal::of_graph(&subgroup.graph()?, Strategy::ShortLexBfs)?;
            let basis = schreier_basis(&t);
            let w = Word::parse(subgroup.rank, &word)?;
            writeln!(out, "{}", membership::rewrite(&t, &basis, &w)?.to_json(&basis))?;
        }
        Command::Gwp { instance, words, level_budget } => {
            let inst = GwpInstance::from_json(&read_arg(&instance)?)?;
            let rank = inst.rank;
            let mut solver = GwpSolver::new(inst, level_budget)?;
            let mut reports = Vec::new();
            for w in word_list(rank, &words)? {
                reports.push(solver.decide(&w)?);
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?;
            if reports.iter().any(|r| r.decision == membership::Decision::Inconclusive) {
                return Ok(Outcome::Inconclusive);
            }
        }
        Command::Intersect { rank, left, right, horizon } => {
            let g1 = CosetGraph::from_generators(rank, &word_list(rank, &left)?)?;
            let g2 = CosetGraph::from_generators(rank, &word_list(rank, &right)?)?;
            let h = intersection::intersect(&g1, &g2)?;
            writeln!(out, "{}", h.to_json())?;
            let report = intersection::burns_audit(&g1, &g2, horizon, budget)?;
            writeln!(out, "i,rk_H,literal_bound,reference_bound,literal,reference")?;
            let verdict = |ok: bool| if ok { "pass" } else { "fail" };
            for r in &report.rows {
                writeln!(out, "{},{},{},{},{},{}", r.i, r.rk, r.literal_bound, r.reference_bound, verdict(r.literal_holds), verdict(r.reference_holds))?;
            }
            match report.reference_bound {
                Some(b) => writeln!(
                    out,
                    "rank {} <= {b} on ranks {} and {}: {}",
                    report.rank_intersection,
                    report.rank_left,
                    report.rank_right,
                    verdict(report.reference_holds)
                )?,
                None => writeln!(out, "rank {}: a factor is trivial", report.rank_intersection)?,
            }
            if report.partial {
                writeln!(err, "warning: budget stopped the audit after i = {}", report.rows.len())?;
                return Ok(Outcome::Inconclusive);
            }
        }
        Command::Patho { c, steps, c_max } => {
            let pg = pathological::build_pathological(c, steps)?;
            let (lin, exp) = pathological::pathological_transversals(&pg)?;
            let linear = pathological::constructed_growth(&lin);
            let exponential = pathological::constructed_growth(&exp);
            let window = exponential.len().min(linear.len());
            let probe = growth::equivalence_probe(&linear[..window], &exponential[..window], c_max);
            let j = PathoJson {
                c,
                steps,
                graph: serde_json::from_str(&pg.graph.to_json())?,
                max_degree: pg.max_degree(),
                terminal_ties: &pg.terminal_ties,
                linear,
                exponential,
                probe: probe.describe(),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&j)?)?;
        }
        Command::Complex(cmd) => match cmd {
            ComplexCommand::CheckSpanning { complex, sub } => {
                let ok = complexes::is_spanning_subcomplex(&complex_from(&sub)?, &complex_from(&complex)?);
                writeln!(out, "{}", if ok { "yes" } else { "no" })?;
            }
            ComplexCommand::Certify { complex } => {
                let cert = complexes::contractibility_certificate(&complex_from(&complex)?);
                writeln!(out, "{}", serde_json::to_string_pretty(&cert)?)?;
                if cert.verdict == Contractibility::HomologyTrivialButUncollapsed {
                    return Ok(Outcome::Inconclusive);
                }
            }
            ComplexCommand::Bouquet { complex, sub, method } => {
                let (c, d) = (complex_from(&complex)?, complex_from(&sub)?);
                match method {
                    Method::Direct => writeln!(out, "{}", complexes::bouquet_count_direct(&c, &d)?)?,
                    Method::Formula => {
                        let top = c.dim().unwrap_or(0);
                        let n = match c.simplices(top.saturating_sub(1)).next() {
                            Some(s) if top > 0 => c.degree(s)?,
                            _ => return Err(Error::NotRegular(0)),
                        };
                        let f = complexes::bouquet_count_formula(&c, n, &d, std::slice::from_ref(&d))?;
                        writeln!(out, "{}", f.limit)?;
                    }
                }
            }
        },
        Command::Random(cmd) => {
            let mut rng = crate::random::rng(cli.seed);
            match cmd {
                RandomCommand::Subgroup { rank, gens, len } => {
                    let words = crate::random::subgroup_generators(&mut rng, rank, gens, len);
                    let list: Vec<String> = words.iter().map(Word::to_string).collect();
                    writeln!(out, "# seed {}", cli.seed)?;
                    writeln!(out, "{}", list.join(","))?;
                }
                RandomCommand::Sphere { steps } => {
                    let s = crate::random::sphere(&mut rng, steps);
                    let mut j: serde_json::Value = serde_json::from_str(&s.to_json())?;
                    j["seed"] = cli.seed.into();
                    writeln!(out, "{j}")?;
                }
            }
        }
    }
    Ok(Outcome::Done)
}

/// Runs the command line and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{e}");
            return 1;
        }
        Err(e) => {
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match execute(cli, out, err) {
        Ok(Outcome::Done) => 0,
        Ok(Outcome::Inconclusive) => 3,
        Err(e @ Error::BudgetExceeded { .. }) => {
            let _ = writeln!(err, "error: {e}");
            3
        }
        // the reader went away, as with `| head`
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
