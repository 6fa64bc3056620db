//! The `hamdecomp` command line.
//!
//! Exit codes: 0 success or certified, 1 refuted, infeasible or none,
//! 2 budget exhausted or not applicable, 64 usage error. Malformed input and
//! violated input preconditions (wrong graph kind, odd degrees where even
//! ones are required, sizes above a cap) are usage errors.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hamdecomp_core::bounds::{check_binresults, chernoff, f_dir, g_undir};
use hamdecomp_core::expansion::{
    certify_degree, check_exact, refute_sampled, second_eigenvalue, spectral_certificate,
    verify_mixing, ExpansionError, ExpansionParams, ExpansionVerdict, InNeighbourhoods, PairSource,
};
use hamdecomp_core::factors::{
    find_r_factor_digraph, find_r_factor_graph, matchings_extract, matchings_hypothesis,
    petersen_2_factorization, reg_dir_with_factor, reg_even_undir, DegreeSpec, FactorError,
    FactorOutcome,
};
use hamdecomp_core::hamilton::{
    find_hamilton, ham_vs_reg, pack_hamilton, trivial_bound, verify_packing, HamiltonError,
    HamiltonOutcome, HamiltonPacking, PackStatus, SearchBudget,
};
use hamdecomp_core::models::{
    self, erdos_trial, gnp_h_trial, tourn_edges_trial, ErdosSummary, GnpHSummary, TrialReport,
};
use hamdecomp_core::orient::{
    disc, euler_orientation, path_switch_balance, random_orientation, regular_orientation,
    slice_orientation, OrientError, OrientationResult,
};
use hamdecomp_core::rational::parse_frac;
use hamdecomp_core::{AnyGraph, Digraph, Graph, OrientedGraph, Seed};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::edgelist::{parse_graph, write_edge_list, ParseError};
use crate::jobs::run_trials;
use crate::output::{json_line, render_table, render_text, sha256_hex, Envelope};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "hamdecomp", version, about = "Regular factors, orientations, robust expansion and Hamilton cycle packing")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Read the graph from FILE instead of stdin.
    #[arg(long, global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Print wall-clock timings on stderr.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form bounds.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// r-factor of the input, or a certificate that none exists.
    Factor(FactorArgs),
    /// Largest regular (even-regular for graphs) spanning subgraph.
    Reg,
    /// 2-factorization of an even-regular graph.
    Petersen,
    /// Regular factor of a dense graph by repeated matchings.
    MatchingsExtract,
    /// Orient an undirected graph.
    Orient(OrientArgs),
    /// Balance an orientation of an even-regular graph by path switching.
    Balance,
    /// Robust expansion and spectral data.
    #[command(subcommand)]
    Expand(ExpandCmd),
    /// Hamilton cycles and packings.
    #[command(subcommand)]
    Hamilton(HamiltonCmd),
    /// Generate a graph.
    Gen(GenArgs),
    /// Seeded random-model experiments, as JSON lines.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case", tag = "bound")]
pub enum BoundsCmd {
    /// f(n, δ) for digraphs.
    F {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        delta: u64,
    },
    /// g(n, δ) for graphs.
    G {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        delta: u64,
        /// Admit δ = n/2.
        #[arg(long)]
        relaxed: bool,
    },
    /// exp(−a²μ/3).
    Chernoff {
        #[arg(long)]
        mean: f64,
        #[arg(long)]
        a: f64,
    },
    /// The three binomial inequalities at (n, r, h).
    Binresults {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        h: f64,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct FactorArgs {
    #[arg(long)]
    pub r: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrientMode {
    Random,
    Euler,
    Regular,
    PaperPipeline,
}

#[derive(Debug, Args, Serialize)]
pub struct OrientArgs {
    #[arg(long, value_enum)]
    pub mode: OrientMode,
    /// Required by `random` and `paper-pipeline`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Slice density for `paper-pipeline`.
    #[arg(long, default_value_t = 0.05)]
    pub xi: f64,
}

#[derive(Debug, Subcommand)]
pub enum ExpandCmd {
    /// Robust (ν, τ)-outexpansion verdict.
    Check(CheckArgs),
    /// Second eigenvalue modulus of a regular graph.
    Spectrum,
    /// Expander mixing inequality on sampled or all pairs.
    Mixing(MixingArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Exact,
    Sample,
    Degree,
    Spectral,
}

#[derive(Debug, Args, Serialize)]
pub struct CheckArgs {
    #[arg(long, value_enum)]
    pub mode: CheckMode,
    /// Decimal or p/q, held exactly.
    #[arg(long)]
    pub nu: String,
    #[arg(long)]
    pub tau: String,
    /// Sampled sets for `sample`.
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// Required by `sample`.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct MixingArgs {
    /// Sampled pairs; requires --seed.
    #[arg(long, conflicts_with = "exhaustive")]
    pub pairs: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Every pair of nonempty sets (n ≤ 16).
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Debug, Args, Serialize, Clone, Copy)]
pub struct BudgetArgs {
    /// Node cap per packing attempt.
    #[arg(long, default_value_t = 50_000_000)]
    pub budget_nodes: u64,
    /// Node cap per single-cycle search (default: --budget-nodes).
    #[arg(long)]
    pub per_cycle_nodes: Option<u64>,
    /// Relabelled restarts after a budget exhaustion.
    #[arg(long, default_value_t = 2)]
    pub restarts: u32,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_nodes: self.budget_nodes,
            per_cycle_nodes: self.per_cycle_nodes.unwrap_or(self.budget_nodes),
            restarts: self.restarts,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum HamiltonCmd {
    /// One Hamilton cycle.
    Find(BudgetArgs),
    /// Edge-disjoint Hamilton cycles.
    Pack(PackArgs),
    /// Check a packing document against the graph.
    Verify(VerifyArgs),
    /// Pack a largest regular factor and compare with its degree bound.
    HamVsReg(BudgetArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct PackArgs {
    /// Cycles wanted (default: ⌊δ/2⌋ for graphs, δ⁰ for digraphs).
    #[arg(long)]
    pub target: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// A packing, or a `hamilton pack` output document.
    #[arg(long, value_name = "FILE")]
    pub packing: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Emit {
    Edgelist,
    Json,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Graph format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Emit::Edgelist)]
    pub emit: Emit,
    #[command(subcommand)]
    pub model: GenModel,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case", tag = "model")]
pub enum GenModel {
    /// Uniform random tournament.
    Tournament {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Transitive tournament.
    Transitive {
        #[arg(long)]
        n: usize,
    },
    /// G(n, p).
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Random digraph, each ordered pair an arc with probability p.
    Digraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Digraph with δ⁰ = δ and no regular factor of degree above f(n, δ).
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: usize,
    },
    /// Rotational tournament on odd n.
    Rotational {
        #[arg(long)]
        n: usize,
    },
    /// Regular k-partite tournament with even class size m.
    Kpartite {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
    /// Paley graph on a prime q ≡ 1 (mod 4).
    Paley {
        #[arg(long)]
        q: usize,
    },
    /// Circulant graph or digraph.
    Circulant {
        #[arg(long)]
        n: usize,
        /// Comma-separated shifts.
        #[arg(long, value_delimiter = ',', required = true)]
        shifts: Vec<usize>,
        #[arg(long)]
        directed: bool,
    },
    /// Complete graph or digraph.
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        directed: bool,
    },
    /// Cycle or directed cycle.
    Cycle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        directed: bool,
    },
    /// The Petersen graph.
    Petersen,
}

#[derive(Debug, Args, Serialize, Clone, Copy)]
pub struct TrialArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
    /// Worker threads; output does not depend on it.
    #[arg(long, default_value_t = 1)]
    #[serde(skip)]
    pub jobs: usize,
}

#[derive(Debug, Subcommand)]
pub enum ExperimentCmd {
    /// Semidegree window and edge discrepancy of random tournaments.
    TournEdges {
        #[command(flatten)]
        trials: TrialArgs,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
    },
    /// δ⁰-factor, orientation and Hamilton packing of random tournaments.
    Erdos {
        #[command(flatten)]
        trials: TrialArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Regular-factor extraction on dense G(n, p).
    GnpH {
        #[command(flatten)]
        trials: TrialArgs,
        #[arg(long)]
        p: f64,
    },
}

/// A usage error: printed on stderr, exit 64.
#[derive(Debug)]
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

type Res<T> = Result<T, Usage>;

/// What a command produced.
enum Output {
    Doc {
        result: Value,
        details: Option<Value>,
        code: i32,
    },
    Lines {
        trials: Vec<Value>,
        summary: Value,
    },
    EdgeList(String),
}

fn doc(result: impl Serialize, code: i32) -> Output {
    Output::Doc {
        result: to_value(result),
        details: None,
        code,
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

/// The graph on stdin or `--input`, with its source name and digest.
struct Input {
    graph: AnyGraph,
    source: String,
    sha256: String,
}

fn read_input(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Res<Input> {
    let (source, bytes) = match path {
        Some(p) => (
            p.display().to_string(),
            std::fs::read(p).map_err(|e| Usage(format!("{}: {e}", p.display())))?,
        ),
        None => {
            let mut buf = Vec::new();
            stdin
                .read_to_end(&mut buf)
                .map_err(|e| Usage(format!("<stdin>: {e}")))?;
            ("<stdin>".to_string(), buf)
        }
    };
    let text = std::str::from_utf8(&bytes).map_err(|e| Usage(format!("{source}: not UTF-8: {e}")))?;
    let graph = parse_graph(text).map_err(|e: ParseError| Usage(format!("{source}:{e}")))?;
    Ok(Input {
        graph,
        sha256: sha256_hex(&bytes),
        source,
    })
}

fn undirected(g: &AnyGraph, what: &str) -> Res<Graph> {
    match g {
        AnyGraph::Undirected(g) => Ok(g.clone()),
        AnyGraph::Directed(_) => Err(Usage(format!("{what} needs an undirected graph"))),
    }
}

fn directed(g: &AnyGraph, what: &str) -> Res<Digraph> {
    match g {
        AnyGraph::Directed(d) => Ok(d.clone()),
        AnyGraph::Undirected(_) => Err(Usage(format!("{what} needs a digraph"))),
    }
}

fn edges(pairs: impl Iterator<Item = (usize, usize)>) -> Value {
    Value::Array(pairs.map(|(u, v)| json!([u, v])).collect())
}

fn required_seed(seed: Option<u64>, what: &str) -> Res<Seed> {
    seed.map(Seed::new)
        .ok_or_else(|| Usage(format!("{what} is randomized and needs --seed")))
}

/// Parses `argv`, runs the command and writes its document to `out`.
/// Returns the exit code.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let start = Instant::now();
    let name = command_name(&cli.command);
    let code = match execute(&cli, &name, stdin, out) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    };
    if cli.timings {
        let _ = writeln!(err, "timing: {name}: {:.3}s", start.elapsed().as_secs_f64());
    }
    code
}

fn command_name(c: &Command) -> String {
    let sub = |s: &str| s.to_string();
    match c {
        Command::Bounds(b) => format!(
            "bounds {}",
            match b {
                BoundsCmd::F { .. } => "f",
                BoundsCmd::G { .. } => "g",
                BoundsCmd::Chernoff { .. } => "chernoff",
                BoundsCmd::Binresults { .. } => "binresults",
            }
        ),
        Command::Factor(_) => sub("factor"),
        Command::Reg => sub("reg"),
        Command::Petersen => sub("petersen"),
        Command::MatchingsExtract => sub("matchings-extract"),
        Command::Orient(_) => sub("orient"),
        Command::Balance => sub("balance"),
        Command::Expand(e) => format!(
            "expand {}",
            match e {
                ExpandCmd::Check(_) => "check",
                ExpandCmd::Spectrum => "spectrum",
                ExpandCmd::Mixing(_) => "mixing",
            }
        ),
        Command::Hamilton(h) => format!(
            "hamilton {}",
            match h {
                HamiltonCmd::Find(_) => "find",
                HamiltonCmd::Pack(_) => "pack",
                HamiltonCmd::Verify(_) => "verify",
                HamiltonCmd::HamVsReg(_) => "ham-vs-reg",
            }
        ),
        Command::Gen(g) => format!("gen {}", gen_model_name(&g.model)),
        Command::Experiment(e) => format!(
            "experiment {}",
            match e {
                ExperimentCmd::TournEdges { .. } => "tourn-edges",
                ExperimentCmd::Erdos { .. } => "erdos",
                ExperimentCmd::GnpH { .. } => "gnp-h",
            }
        ),
    }
}

fn gen_model_name(m: &GenModel) -> &'static str {
    match m {
        GenModel::Tournament { .. } => "tournament",
        GenModel::Transitive { .. } => "transitive",
        GenModel::Gnp { .. } => "gnp",
        GenModel::Digraph { .. } => "digraph",
        GenModel::Extremal { .. } => "extremal",
        GenModel::Rotational { .. } => "rotational",
        GenModel::Kpartite { .. } => "kpartite",
        GenModel::Paley { .. } => "paley",
        GenModel::Circulant { .. } => "circulant",
        GenModel::Complete { .. } => "complete",
        GenModel::Cycle { .. } => "cycle",
        GenModel::Petersen => "petersen",
    }
}

/// Command arguments as they appear in the echoed configuration.
fn command_config(c: &Command) -> Map<String, Value> {
    let v = match c {
        Command::Bounds(b) => to_value(b),
        Command::Factor(a) => to_value(a),
        Command::Orient(a) => to_value(a),
        Command::Expand(ExpandCmd::Check(a)) => to_value(a),
        Command::Expand(ExpandCmd::Mixing(a)) => to_value(a),
        Command::Hamilton(HamiltonCmd::Find(b) | HamiltonCmd::HamVsReg(b)) => {
            to_value(b.budget())
        }
        Command::Hamilton(HamiltonCmd::Pack(a)) => {
            json!({"target": a.target, "budget": a.budget.budget()})
        }
        Command::Hamilton(HamiltonCmd::Verify(a)) => to_value(a),
        Command::Gen(g) => {
            let mut v = to_value(&g.model);
            v["emit"] = to_value(g.emit);
            v
        }
        Command::Experiment(e) => match e {
            ExperimentCmd::TournEdges { trials, epsilon } => {
                let mut v = to_value(trials);
                v["epsilon"] = json!(epsilon);
                v
            }
            ExperimentCmd::Erdos { trials, budget } => {
                let mut v = to_value(trials);
                v["budget"] = to_value(budget.budget());
                v
            }
            ExperimentCmd::GnpH { trials, p } => {
                let mut v = to_value(trials);
                v["p"] = json!(p);
                v
            }
        },
        Command::Reg
        | Command::Petersen
        | Command::MatchingsExtract
        | Command::Balance
        | Command::Expand(ExpandCmd::Spectrum) => json!({}),
    };
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

fn needs_input(c: &Command) -> bool {
    !matches!(
        c,
        Command::Bounds(_) | Command::Gen(_) | Command::Experiment(_)
    )
}

fn execute(cli: &Cli, name: &str, stdin: &mut dyn Read, out: &mut dyn Write) -> Res<i32> {
    let mut config = command_config(&cli.command);
    config.insert("format".into(), to_value(cli.format));
    let input = if needs_input(&cli.command) {
        let input = read_input(cli.input.as_ref(), stdin)?;
        config.insert("input".into(), json!(input.source));
        config.insert("input_sha256".into(), json!(input.sha256));
        Some(input)
    } else {
        None
    };
    let graph = input.as_ref().map(|i| &i.graph);
    let output = dispatch(&cli.command, graph)?;
    let config = Value::Object(config);
    let (text, code) = match output {
        Output::Doc {
            result,
            details,
            code,
        } => {
            let env = Envelope {
                command: name.to_string(),
                config,
                result,
                details,
            };
            let text = match cli.format {
                Format::Json => env.to_json(),
                Format::Text => render_text(&env),
            };
            (text, code)
        }
        Output::Lines { trials, summary } => {
            let text = match cli.format {
                Format::Json => {
                    let mut s = json_line(&json!({"command": name, "config": config}));
                    trials.iter().for_each(|t| s.push_str(&json_line(t)));
                    s + &json_line(&json!({ "summary": summary }))
                }
                Format::Text => {
                    let rows: Vec<Value> = trials
                        .iter()
                        .map(|t| {
                            let mut t = t.clone();
                            if let Some(m) = t.as_object_mut() {
                                m.remove("model");
                            }
                            t
                        })
                        .collect();
                    let env = Envelope {
                        command: name.to_string(),
                        config,
                        result: summary,
                        details: None,
                    };
                    render_table(&rows) + "\n" + &render_text(&env)
                }
            };
            (text, EXIT_OK)
        }
        Output::EdgeList(body) => {
            let header = format!(
                "# hamdecomp {name} {}\n",
                serde_json::to_string(&config).expect("config serializes")
            );
            (header + &body, EXIT_OK)
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Usage(format!("writing output: {e}")))?;
    Ok(code)
}

fn dispatch(c: &Command, g: Option<&AnyGraph>) -> Res<Output> {
    let g = || g.expect("input read for graph commands");
    match c {
        Command::Bounds(b) => bounds(b),
        Command::Factor(a) => factor(g(), a.r),
        Command::Reg => reg(g()),
        Command::Petersen => {
            let u = undirected(g(), "petersen")?;
            let factors = petersen_2_factorization(&u)?;
            Ok(doc(
                json!({
                    "degree": u.regular_degree(),
                    "count": factors.len(),
                    "factors": factors.iter().map(|f| edges(f.edges())).collect::<Vec<_>>(),
                }),
                EXIT_OK,
            ))
        }
        Command::MatchingsExtract => matchings(g()),
        Command::Orient(a) => orient(g(), a),
        Command::Balance => balance(g()),
        Command::Expand(e) => expand(g(), e),
        Command::Hamilton(h) => hamilton(g(), h),
        Command::Gen(a) => generate(a),
        Command::Experiment(e) => experiment(e),
    }
}

fn bounds(b: &BoundsCmd) -> Res<Output> {
    Ok(match *b {
        BoundsCmd::F { n, delta } => doc(f_dir(n, delta)?, EXIT_OK),
        BoundsCmd::G { n, delta, relaxed } => doc(g_undir(n, delta, relaxed)?, EXIT_OK),
        BoundsCmd::Chernoff { mean, a } => {
            doc(json!({"mean": mean, "a": a, "bound": chernoff(mean, a)?}), EXIT_OK)
        }
        BoundsCmd::Binresults { n, r, h } => {
            let b = check_binresults(n, r, h)?;
            let code = if b.all_hold() { EXIT_OK } else { EXIT_NEGATIVE };
            doc(b, code)
        }
    })
}

fn factor(g: &AnyGraph, r: usize) -> Res<Output> {
    match g {
        AnyGraph::Directed(d) => Ok(match find_r_factor_digraph(d, r) {
            FactorOutcome::Found(f) => doc(
                json!({
                    "status": "found",
                    "directed": true,
                    "r": r,
                    "verified": f.verified,
                    "factor_edges": edges(f.subgraph.arcs()),
                }),
                EXIT_OK,
            ),
            FactorOutcome::Infeasible(w) => doc(
                json!({
                    "status": "infeasible",
                    "directed": true,
                    "r": r,
                    "witness_verified": w.verify(d, &DegreeSpec::regular(d.n(), r)),
                    "cut_witness": w,
                }),
                EXIT_NEGATIVE,
            ),
        }),
        AnyGraph::Undirected(u) => {
            let infeasible = |reason: Value| {
                doc(
                    json!({"status": "infeasible", "directed": false, "r": r, "reason": reason}),
                    EXIT_NEGATIVE,
                )
            };
            if let Some(v) = (0..u.n()).find(|&v| u.degree(v) < r) {
                return Ok(infeasible(json!({"kind": "degree_below_target", "vertex": v})));
            }
            if r % 2 == 1 {
                return Err(FactorError::OddDegree(r).into());
            }
            Ok(match find_r_factor_graph(u, r)? {
                Some(f) => doc(
                    json!({
                        "status": "found",
                        "directed": false,
                        "r": r,
                        "verified": f.verified,
                        "factor_edges": edges(f.subgraph.edges()),
                    }),
                    EXIT_OK,
                ),
                None => infeasible(json!({"kind": "no_degree_constrained_subgraph"})),
            })
        }
    }
}

fn reg(g: &AnyGraph) -> Res<Output> {
    Ok(match g {
        AnyGraph::Directed(d) => {
            let (r, f) = reg_dir_with_factor(d);
            doc(
                json!({"directed": true, "reg": r, "verified": f.verified, "factor_edges": edges(f.subgraph.arcs())}),
                EXIT_OK,
            )
        }
        AnyGraph::Undirected(u) => {
            let r = reg_even_undir(u)?;
            let f = find_r_factor_graph(u, r)?.expect("reg_even is attained");
            doc(
                json!({"directed": false, "reg": r, "verified": f.verified, "factor_edges": edges(f.subgraph.edges())}),
                EXIT_OK,
            )
        }
    })
}

fn matchings(g: &AnyGraph) -> Res<Output> {
    let u = undirected(g, "matchings-extract")?;
    let hypothesis = matchings_hypothesis(&u);
    if !hypothesis.holds {
        return Ok(doc(
            json!({"status": "not_applicable", "hypothesis": hypothesis}),
            EXIT_INCONCLUSIVE,
        ));
    }
    let report = matchings_extract(&u)?;
    let code = if report.verified { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(doc(json!({"status": "extracted", "report": report}), code))
}

fn orientation_doc(o: &OrientationResult) -> Value {
    json!({
        "digraph": o.digraph,
        "out_degrees": o.out_degrees,
        "in_degrees": o.in_degrees,
        "disc": disc(&o.digraph),
    })
}

fn orient(g: &AnyGraph, a: &OrientArgs) -> Res<Output> {
    let u = undirected(g, "orient")?;
    let o = match a.mode {
        OrientMode::Random => random_orientation(&u, required_seed(a.seed, "random orientation")?),
        OrientMode::Euler => euler_orientation(&u)?,
        OrientMode::Regular => regular_orientation(&u)?,
        OrientMode::PaperPipeline => {
            let seed = required_seed(a.seed, "paper-pipeline orientation")?;
            return Ok(match slice_orientation(&u, a.xi, seed) {
                Ok(s) => {
                    let mut v = orientation_doc(&s.orientation);
                    v["status"] = json!("oriented");
                    v["slice"] = to_value(&s.slice);
                    v["slice_degree"] = json!(s.slice_degree);
                    v["split_attempts"] = json!(s.split_attempts);
                    doc(v, EXIT_OK)
                }
                Err(
                    e @ (OrientError::SliceTargetNegative { .. }
                    | OrientError::SliceInfeasible { .. }),
                ) => doc(
                    json!({"status": "slice_failed", "reason": e.to_string()}),
                    EXIT_NEGATIVE,
                ),
                Err(e) => return Err(e.into()),
            });
        }
    };
    let mut v = orientation_doc(&o);
    v["status"] = json!("oriented");
    Ok(doc(v, EXIT_OK))
}

fn balance(g: &AnyGraph) -> Res<Output> {
    let d = directed(g, "balance")?;
    let o = OrientedGraph::new(d).map_err(|e| Usage(format!("balance needs an oriented graph: {e}")))?;
    Ok(match path_switch_balance(&o) {
        Ok((res, trace)) => {
            let mut v = orientation_doc(&res);
            v["status"] = json!("balanced");
            v["strictly_decreasing"] = json!(trace.strictly_decreasing());
            v["trace"] = to_value(&trace);
            doc(v, EXIT_OK)
        }
        Err(OrientError::PathNotFound { from }) => doc(
            json!({"status": "path_not_found", "from": from}),
            EXIT_NEGATIVE,
        ),
        Err(e) => return Err(e.into()),
    })
}

fn verdict_code(v: &ExpansionVerdict) -> i32 {
    match v {
        ExpansionVerdict::Certified { .. } | ExpansionVerdict::NoViolationFound { .. } => EXIT_OK,
        ExpansionVerdict::Refuted { .. } => EXIT_NEGATIVE,
        ExpansionVerdict::NotApplicable { .. } => EXIT_INCONCLUSIVE,
    }
}

fn expand(g: &AnyGraph, e: &ExpandCmd) -> Res<Output> {
    match e {
        ExpandCmd::Check(a) => {
            let frac = |s: &str, what: &str| {
                parse_frac(s).ok_or_else(|| Usage(format!("--{what}: `{s}` is not a decimal or p/q")))
            };
            let p = ExpansionParams::new(frac(&a.nu, "nu")?, frac(&a.tau, "tau")?)?;
            let host: &dyn InNeighbourhoods = match g {
                AnyGraph::Directed(d) => d,
                AnyGraph::Undirected(u) => u,
            };
            let (verdict, details) = match a.mode {
                CheckMode::Exact => (check_exact(host, &p)?, None),
                CheckMode::Sample => {
                    let seed = required_seed(a.seed, "sampled refutation")?;
                    (refute_sampled(host, &p, a.trials, seed), None)
                }
                CheckMode::Degree => (certify_degree(host, &p), None),
                CheckMode::Spectral => {
                    let u = undirected(g, "the spectral certificate")?;
                    match spectral_certificate(&u, &p) {
                        Ok(c) => (c.verdict.clone(), Some(to_value(&c))),
                        Err(ExpansionError::NotRegular) => (
                            ExpansionVerdict::NotApplicable {
                                method: hamdecomp_core::expansion::Method::Spectral,
                                params: p,
                                reason: "graph is not regular".into(),
                            },
                            None,
                        ),
                        Err(e) => return Err(e.into()),
                    }
                }
            };
            let details = match (verdict.witness(), details) {
                (Some(w), _) => Some(json!({"witness_verified": w.verify(host, &p)})),
                (None, d) => d,
            };
            Ok(Output::Doc {
                code: verdict_code(&verdict),
                result: to_value(&verdict),
                details,
            })
        }
        ExpandCmd::Spectrum => {
            let u = undirected(g, "spectrum")?;
            Ok(doc(second_eigenvalue(&u)?, EXIT_OK))
        }
        ExpandCmd::Mixing(a) => {
            let u = undirected(g, "mixing")?;
            let spectral = second_eigenvalue(&u)?;
            let source = if a.exhaustive {
                if u.n() > 16 {
                    return Err(Usage(format!("exhaustive pairs need n <= 16, got {}", u.n())));
                }
                PairSource::Exhaustive
            } else {
                let pairs = a
                    .pairs
                    .ok_or_else(|| Usage("mixing needs --pairs N or --exhaustive".into()))?;
                PairSource::Sampled {
                    pairs,
                    seed: required_seed(a.seed, "sampled mixing")?,
                }
            };
            let report = verify_mixing(&u, &spectral, source);
            let code = if report.holds() { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(doc(json!({"spectral": spectral, "mixing": report}), code))
        }
    }
}

fn read_packing(path: &PathBuf) -> Res<HamiltonPacking> {
    let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    let at = |e: serde_json::Error| Usage(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()));
    let value: Value = serde_json::from_str(&text).map_err(at)?;
    let inner = match value.get("result") {
        Some(r) => r.get("packing").unwrap_or(r).clone(),
        None => value,
    };
    serde_json::from_value(inner)
        .map_err(|e| Usage(format!("{}: not a packing: {e}", path.display())))
}

fn hamilton(g: &AnyGraph, h: &HamiltonCmd) -> Res<Output> {
    match h {
        HamiltonCmd::Find(b) => {
            let outcome = find_hamilton(g, b.budget())?;
            let code = match outcome {
                HamiltonOutcome::Found(_) => EXIT_OK,
                HamiltonOutcome::None => EXIT_NEGATIVE,
                HamiltonOutcome::BudgetExhausted => EXIT_INCONCLUSIVE,
            };
            Ok(doc(outcome, code))
        }
        HamiltonCmd::Pack(a) => {
            let target = a.target.unwrap_or_else(|| trivial_bound(g));
            match pack_hamilton(g, target, a.budget.budget()) {
                Ok(r) => {
                    let code = match r.status {
                        PackStatus::TargetReached => EXIT_OK,
                        PackStatus::Exhausted => EXIT_NEGATIVE,
                        PackStatus::BudgetExhausted => EXIT_INCONCLUSIVE,
                    };
                    Ok(doc(r, code))
                }
                Err(e @ HamiltonError::TargetAboveBound { target, bound }) => Ok(doc(
                    json!({"status": "infeasible", "target": target, "bound": bound, "reason": e.to_string()}),
                    EXIT_NEGATIVE,
                )),
                Err(e) => Err(e.into()),
            }
        }
        HamiltonCmd::Verify(a) => {
            let packing = read_packing(&a.packing)?;
            Ok(match verify_packing(g, &packing) {
                Ok(()) => doc(
                    json!({"valid": true, "cycles": packing.cycles.len(), "complete": packing.complete}),
                    EXIT_OK,
                ),
                Err(v) => doc(json!({"valid": false, "violation": v.to_string()}), EXIT_NEGATIVE),
            })
        }
        HamiltonCmd::HamVsReg(b) => {
            let r = ham_vs_reg(g, b.budget())?;
            let code = if r.equality_observed {
                EXIT_OK
            } else if r.status == PackStatus::BudgetExhausted {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_NEGATIVE
            };
            Ok(doc(r, code))
        }
    }
}

fn generate(a: &GenArgs) -> Res<Output> {
    let mut details = None;
    let graph = match a.model {
        GenModel::Tournament { n, seed } => {
            AnyGraph::Directed(models::random_tournament(n, Seed::new(seed)).into_digraph())
        }
        GenModel::Transitive { n } => {
            AnyGraph::Directed(models::transitive_tournament(n).into_digraph())
        }
        GenModel::Gnp { n, p, seed } => AnyGraph::Undirected(models::gnp(n, p, Seed::new(seed))?),
        GenModel::Digraph { n, p, seed } => {
            AnyGraph::Directed(models::random_digraph(n, p, Seed::new(seed))?)
        }
        GenModel::Extremal { n, delta } => {
            let (d, c) = models::extremal_digraph(n, delta)?;
            details = Some(to_value(c));
            AnyGraph::Directed(d)
        }
        GenModel::Rotational { n } => {
            AnyGraph::Directed(models::rotational_tournament(n)?.into_digraph())
        }
        GenModel::Kpartite { k, m } => {
            AnyGraph::Directed(models::k_partite_tournament(k, m)?.into_digraph())
        }
        GenModel::Paley { q } => AnyGraph::Undirected(models::paley(q)?),
        GenModel::Circulant {
            n,
            ref shifts,
            directed,
        } => {
            if directed {
                AnyGraph::Directed(models::circulant_digraph(n, shifts)?)
            } else {
                AnyGraph::Undirected(models::circulant_graph(n, shifts)?)
            }
        }
        GenModel::Complete { n, directed } => {
            if directed {
                AnyGraph::Directed(Digraph::complete(n))
            } else {
                AnyGraph::Undirected(Graph::complete(n))
            }
        }
        GenModel::Cycle { n, directed } => {
            if n < 3 {
                return Err(Usage(format!("cycles need n >= 3, got {n}")));
            }
            if directed {
                AnyGraph::Directed(models::directed_cycle(n))
            } else {
                AnyGraph::Undirected(models::cycle_graph(n))
            }
        }
        GenModel::Petersen => AnyGraph::Undirected(models::petersen_graph()),
    };
    Ok(match a.emit {
        Emit::Edgelist => Output::EdgeList(write_edge_list(&graph)),
        Emit::Json => Output::Doc {
            result: to_value(&graph),
            details,
            code: EXIT_OK,
        },
    })
}

fn experiment(e: &ExperimentCmd) -> Res<Output> {
    let check = |t: &TrialArgs| -> Res<Seed> {
        if t.jobs == 0 {
            return Err(Usage("--jobs must be at least 1".into()));
        }
        Ok(Seed::new(t.seed))
    };
    match e {
        ExperimentCmd::TournEdges { trials: t, epsilon } => {
            let seed = check(t)?;
            if !(*epsilon > 0.0 && *epsilon < 1.0) {
                return Err(Usage(format!("--epsilon must lie in (0, 1), got {epsilon}")));
            }
            let runs = run_trials(t.trials, t.jobs, |i| {
                tourn_edges_trial(t.n, *epsilon, seed.with_trial(i))
            });
            let count = |f: &dyn Fn(&hamdecomp_core::models::TournEdgesTrial) -> bool| {
                runs.iter().filter(|r| f(r)).count()
            };
            let summary = json!({
                "n": t.n,
                "trials": runs.len(),
                "epsilon": epsilon,
                "cond_i": count(&|r| r.cond_i),
                "cond_ii": count(&|r| r.cond_ii),
                "cond_i_and_ii": count(&|r| r.cond_i && r.cond_ii),
                "cond_iii": count(&|r| r.cond_iii),
            });
            Ok(Output::Lines {
                trials: runs.into_iter().map(|r| to_value(TrialReport::TournEdges(r))).collect(),
                summary,
            })
        }
        ExperimentCmd::Erdos { trials: t, budget } => {
            let seed = check(t)?;
            let budget = budget.budget();
            let runs = run_trials(t.trials, t.jobs, |i| erdos_trial(t.n, budget, seed.with_trial(i)));
            let summary = to_value(ErdosSummary::of(t.n, &runs));
            Ok(Output::Lines {
                trials: runs.into_iter().map(|r| to_value(TrialReport::Erdos(r))).collect(),
                summary,
            })
        }
        ExperimentCmd::GnpH { trials: t, p } => {
            let seed = check(t)?;
            let runs = run_trials(t.trials, t.jobs, |i| gnp_h_trial(t.n, *p, seed.with_trial(i)))
                .into_iter()
                .collect::<Result<Vec<_>, _>>()?;
            let summary = GnpHSummary {
                n: t.n,
                p: *p,
                trials: runs.len(),
                hypothesis_held: runs.iter().filter(|r| r.hypothesis.holds).count(),
                extracted: runs
                    .iter()
                    .filter(|r| r.hypothesis.holds && r.extracted)
                    .count(),
                complement_ok: runs.iter().filter(|r| r.complement_ok).count(),
            };
            Ok(Output::Lines {
                trials: runs.into_iter().map(|r| to_value(TrialReport::GnpH(r))).collect(),
                summary: to_value(summary),
            })
        }
    }
}
