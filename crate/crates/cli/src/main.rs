use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use h2robust::enumeration::{rank_class, trees_to_csv, ClassDescriptor};
use h2robust::graph::{parse_edge_list, write_edge_list};
use h2robust::metrics::{graph_report, resistance_directed, resistance_undirected, H2Method};
use h2robust::ordering::{decentralized_rewire, verify_lemmas, verify_theorem, RewireConfig, TheoremId};
use h2robust::sim::{simulate, NoiseModel, SimParams};
use h2robust::{Blueprint, Tree, WeightedDigraph};

/// H2-norm robustness of consensus networks.
#[derive(Parser)]
#[command(name = "h2robust", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectrum, H2 norm, Kirchhoff and Wiener indices of a graph, as JSON.
    Compute {
        #[arg(long)]
        input: PathBuf,
        /// eig, lyap or resist.
        #[arg(long, default_value = "eig")]
        method: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pairwise resistance matrix as CSV.
    Resistance {
        #[arg(long)]
        input: PathBuf,
        /// Use the directed resistance (works for any connected digraph).
        #[arg(long)]
        directed: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Materialise a named tree family instance as an edge list.
    Family {
        /// star:N, path:N, pndi:N,d,i, nnd:N,d, dpalm:N,p,q, cat:d,n1,...,
        /// or vine:<subtree-file>,root,l,k.
        #[arg(long)]
        blueprint: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Every unlabeled tree on N nodes, optionally of one diameter, as CSV.
    Enumerate {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        diameter: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trees of a class ranked by Kirchhoff index, as CSV.
    Rank {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        diameter: Option<usize>,
        /// Restrict to caterpillars.
        #[arg(long)]
        caterpillars: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive check of an ordering theorem (1, 2, 3, 5, 6) or of the lemmas.
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 10)]
        max_nodes: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate noisy consensus; writes run.csv and summary.json.
    Simulate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        /// Defaults to 1e-3 / max Re(lambda).
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long, default_value_t = 1_000_000)]
        steps: usize,
        #[arg(long, default_value_t = 100_000)]
        burnin: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        stride: usize,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Decentralized leaf rewiring of a tree; writes the move log as CSV.
    Rewire {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        hops: usize,
        #[arg(long, default_value_t = 1000)]
        max_rounds: usize,
        /// Shuffle the candidate order each round.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_graph(path: &Path) -> Result<WeightedDigraph> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_edge_list(&text).with_context(|| format!("bad input file {}", path.display()))
}

fn read_tree(path: &Path) -> Result<Tree> {
    let g = read_graph(path)?;
    Tree::from_graph(&g).with_context(|| format!("{} is not a tree", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs a command; `Ok(false)` means a verification failed.
fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Compute { input, method, out } => {
            let method: H2Method = method.parse()?;
            let report = graph_report(&read_graph(&input)?, method)?;
            emit(out.as_deref(), &(report.to_json() + "\n"))?;
        }
        Command::Resistance { input, directed, out } => {
            let g = read_graph(&input)?;
            let r = if directed { resistance_directed(&g)? } else { resistance_undirected(&g)? };
            emit(out.as_deref(), &r.to_csv())?;
        }
        Command::Family { blueprint, out } => {
            let b = Blueprint::parse(&blueprint, |file| {
                let g = parse_edge_list(&fs::read_to_string(file).map_err(|e| {
                    h2robust::Error::InvalidParameters(format!("cannot read {file}: {e}"))
                })?)?;
                Tree::from_graph(&g)
            })?;
            emit(out.as_deref(), &write_edge_list(&b.materialize()?))?;
        }
        Command::Enumerate { nodes, diameter, out } => {
            let trees = class(nodes, diameter, false).members()?;
            emit(out.as_deref(), &trees_to_csv(&trees))?;
        }
        Command::Rank { nodes, diameter, caterpillars, out } => {
            let table = rank_class(class(nodes, diameter, caterpillars))?;
            emit(out.as_deref(), &table.to_csv()?)?;
        }
        Command::Verify { theorem, max_nodes, out } => {
            let report = if theorem == "lemmas" {
                verify_lemmas(max_nodes)?
            } else {
                verify_theorem(theorem.parse::<TheoremId>()?, max_nodes)?
            };
            emit(out.as_deref(), &(report.to_json() + "\n"))?;
            eprintln!("{}: {}", report.subject, if report.pass { "PASS" } else { "FAIL" });
            return Ok(report.pass);
        }
        Command::Simulate { input, alpha, dt, steps, burnin, seed, stride, out_dir } => {
            if alpha < 0.0 {
                bail!("--alpha must be >= 0, got {alpha}");
            }
            let g = read_graph(&input)?;
            let params = SimParams { dt, steps, burn_in: burnin, stride, x0: None };
            let run = simulate(&g, NoiseModel { alpha, seed }, &params)?;
            fs::create_dir_all(&out_dir).with_context(|| format!("cannot create {}", out_dir.display()))?;
            let summary = run.summary().to_json() + "\n";
            emit(Some(&out_dir.join("run.csv")), &run.to_csv())?;
            emit(Some(&out_dir.join("summary.json")), &summary)?;
            print!("{summary}");
        }
        Command::Rewire { input, hops, max_rounds, seed, out } => {
            let state = decentralized_rewire(&read_tree(&input)?, RewireConfig { hops, max_rounds, seed })?;
            emit(out.as_deref(), &state.log_csv()?)?;
            eprintln!(
                "{} moves in {} rounds, K_f {} -> {}, terminal tree is {}a star",
                state.log.len(),
                state.round,
                state.log.first().map_or(state.tree.kirchhoff(), |s| s.kf_before),
                state.tree.kirchhoff(),
                if state.is_star() { "" } else { "not " }
            );
        }
    }
    Ok(true)
}

fn class(nodes: usize, diameter: Option<usize>, caterpillars: bool) -> ClassDescriptor {
    let c = match diameter {
        Some(d) => ClassDescriptor::with_diameter(nodes, d),
        None => ClassDescriptor::all(nodes),
    };
    if caterpillars {
        c.caterpillars()
    } else {
        c
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
