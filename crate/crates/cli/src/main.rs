//! `reconf`: generate, solve, convert and cross-check reconfiguration instances.
//!
//! Exit codes: 0 solved / yes, 1 not reconfigurable / no (also a hit length
//! budget unless `--strict-budget`), 2 usage or input error, 3 undetermined
//! (state cap reached, or budget hit under `--strict-budget`).

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "reconf", version, about = "Shortest-path and independent-set reconfiguration toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Generate gadget instances.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Find a shortest reconfiguration sequence.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Convert between TJ and TAR sequences.
    #[command(subcommand)]
    Convert(ConvertCmd),
    /// Build the independent-set instance of a shortest-path instance.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Map a sequence between a graph and its reduced instance.
    MapSeq(MapSeqArgs),
    /// Render graphs.
    #[command(subcommand)]
    Export(ExportCmd),
    /// Check a sequence file against a graph.
    #[command(subcommand)]
    Validate(ValidateCmd),
    /// Dump the explicit reconfiguration graph of a tiny instance.
    Oracle(OracleArgs),
}

#[derive(Subcommand)]
pub enum GenCmd {
    /// The exponential-diameter family; writes PREFIX.graph, PREFIX.paths, PREFIX.json.
    Exp {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
        /// Also write the recursive witness to PREFIX.seq.
        #[arg(long)]
        witness: bool,
    },
    /// The CNF gadget graph; writes PREFIX.graph, PREFIX.paths, PREFIX.json.
    Sat {
        /// DIMACS CNF input.
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write a witness sequence to PREFIX.seq when the formula is satisfiable.
        #[arg(long)]
        witness: bool,
    },
}

#[derive(Args)]
pub struct Limits {
    /// Maximum sequence length to search.
    #[arg(long)]
    pub max_len: Option<usize>,
    /// Give up after visiting this many states (exit 3).
    #[arg(long, default_value_t = 10_000_000)]
    pub max_states: usize,
    /// Exit 3 instead of 1 when the length budget cuts the search short.
    #[arg(long)]
    pub strict_budget: bool,
}

#[derive(Subcommand)]
pub enum SolveCmd {
    /// Shortest-path reconfiguration by exact BFS.
    Sp {
        /// Instance prefix: reads PREFIX.graph, PREFIX.paths and, if present, PREFIX.json.
        #[arg(long, conflicts_with_all = ["graph", "paths"])]
        instance: Option<PathBuf>,
        #[arg(long, requires = "paths")]
        graph: Option<PathBuf>,
        /// Two lines: source path and target path.
        #[arg(long, requires = "graph")]
        paths: Option<PathBuf>,
        /// Metadata sidecar; its `budget` becomes the default `--max-len`.
        #[arg(long)]
        meta: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Independent-set reconfiguration.
    Is {
        #[arg(long)]
        graph: PathBuf,
        /// Source set: `0,2,5`, `-` for empty, or `@file`.
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long, value_enum)]
        model: ModelArg,
        /// TAR threshold; defaults to the size of the source set.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        #[command(flatten)]
        limits: Limits,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Ts,
    Tj,
    Tar,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    /// Forest Piran graph under TJ: ehf; cograph under TS: cograph; else bfs.
    Auto,
    Bfs,
    Ehf,
    Cograph,
}

#[derive(Subcommand)]
pub enum ConvertCmd {
    /// Fold a TAR sequence into a TJ sequence.
    TarToTj {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expand each jump into a removal and an addition.
    TjToTar {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
pub enum ReduceCmd {
    /// Writes PREFIX.graph (the reduced graph) and PREFIX.layers.
    SpToIs {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
pub struct MapSeqArgs {
    /// The original graph.
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub t: usize,
    /// An sp-sequence on the original graph, or an is-sequence on the reduced one.
    #[arg(long)]
    pub seq: PathBuf,
    #[arg(long, value_enum)]
    pub to: MapTarget,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapTarget {
    Sp,
    Ts,
    Tj,
    Tar,
}

#[derive(Subcommand)]
pub enum ExportCmd {
    /// Graphviz DOT.
    Dot {
        #[arg(long)]
        graph: PathBuf,
        /// Vertex set to highlight (repeatable): `0,2,5` or `@file`.
        #[arg(long)]
        highlight: Vec<String>,
        /// Highlight both paths of a paths file.
        #[arg(long)]
        paths: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
pub enum ValidateCmd {
    Sp {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        seq: PathBuf,
    },
    Is {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        seq: PathBuf,
    },
}

#[derive(Args)]
pub struct OracleArgs {
    /// Which reconfiguration graph to build.
    #[arg(long, value_enum)]
    pub space: Space,
    #[arg(long, required_unless_present = "random", conflicts_with = "random")]
    pub graph: Option<PathBuf>,
    /// Use a seeded random graph instead of `--graph`.
    #[arg(long)]
    pub random: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Vertex count of the random graph.
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    /// Edge probability of the random graph.
    #[arg(long, default_value_t = 0.4)]
    pub p: f64,
    /// Path endpoints for `--space sp`; with `--random` they default to 0 and
    /// the lowest-id vertex farthest from it.
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    /// Token count for ts/tj, threshold for tar.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Write the random graph here.
    #[arg(long)]
    pub save_graph: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Space {
    Sp,
    Ts,
    Tj,
    Tar,
}

/// What a successful run concluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Undetermined,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Ok(Verdict::Undetermined) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
