use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Decide classical-model and answer-set existence of ground disjunctive
/// programs over k-expressions of their signed incidence graph.
///
/// Every command prints JSON on standard output. Exit status: 0 ok, 1
/// negative decision or empty enumeration, 2 usage error, 3 invalid input
/// or mismatch.
#[derive(Parser, Debug)]
#[command(name = "cwasp", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a dynamic program over an expression validated against the program.
    Solve(SolveArgs),
    /// Enumerate models or answer sets by brute force.
    Oracle(OracleArgs),
    /// Check that an expression defines the program's signed incidence graph.
    Validate(ValidateArgs),
    /// Cycle-rank and orientation measures.
    #[command(subcommand)]
    Measure(MeasureCommand),
    /// Export the dependency or incidence graph of a program.
    Graph(GraphArgs),
    /// Generate instances and reductions.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Build or transform expressions.
    #[command(subcommand)]
    Expr(ExprCommand),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SolveMode {
    Classical,
    Asp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Construction {
    Trivial,
    Heuristic,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub mode: SolveMode,
    #[arg(long)]
    pub program: PathBuf,
    #[arg(long, required_unless_present = "auto_expr", conflicts_with = "auto_expr")]
    pub expr: Option<PathBuf>,
    /// Build the expression instead of reading one.
    #[arg(long, value_enum)]
    pub auto_expr: Option<Construction>,
    /// Write every node's table to this file.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OracleMode {
    Models,
    Answersets,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long, value_enum)]
    pub mode: OracleMode,
    #[arg(long)]
    pub program: PathBuf,
    /// Refuse programs with more atoms than this.
    #[arg(long, default_value_t = cwasp::oracle::DEFAULT_ENUMERATION_BOUND)]
    pub bound: usize,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    #[arg(long)]
    pub program: PathBuf,
    #[arg(long)]
    pub expr: PathBuf,
}

/// A digraph file, or a program whose dependency graph is measured.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    /// JSON digraph with `vertices` and `arcs`.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub program: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum MeasureCommand {
    Cyclerank {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = cwasp::graph::DEFAULT_EXACT_BOUND)]
        bound: usize,
    },
    Uncyclerank {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = cwasp::graph::DEFAULT_EXACT_BOUND)]
        bound: usize,
    },
    /// Cycle-rank of the homogeneous orientations of the incidence graph.
    Homogeneous {
        #[arg(long)]
        program: PathBuf,
        /// Enumerate all orientations up to this many groups, sample beyond.
        #[arg(long, default_value_t = 14)]
        max_exhaustive_groups: usize,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GraphKind {
    Dep,
    Inc,
    Sinc,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GraphFormat {
    Json,
    Dot,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    #[arg(value_enum)]
    pub kind: GraphKind,
    #[arg(long)]
    pub program: PathBuf,
    /// Signs to merge into one (signed graph only), e.g. `p,n`.
    #[arg(long, value_delimiter = ',')]
    pub join: Vec<cwasp::graph::Sign>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: GraphFormat,
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// Program of a QBF.
    Qbf2asp {
        #[arg(long)]
        qbf: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Program and expression of a k-partite graph, read or generated.
    Pclique {
        #[arg(long, conflicts_with_all = ["k", "part_size", "density", "seed"])]
        graph: Option<PathBuf>,
        #[arg(long, required_unless_present = "graph")]
        k: Option<usize>,
        #[arg(long, default_value_t = 2)]
        part_size: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        expr_out: Option<PathBuf>,
        /// Also write the generated graph.
        #[arg(long)]
        instance_out: Option<PathBuf>,
    },
    /// Program whose head edges form an n by n grid.
    Grid {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    RandomProgram {
        #[arg(long)]
        atoms: usize,
        #[arg(long)]
        rules: usize,
        #[arg(long, default_value_t = 0.2)]
        head: f64,
        #[arg(long, default_value_t = 0.2)]
        pos: f64,
        #[arg(long, default_value_t = 0.2)]
        neg: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    RandomQbf {
        #[arg(long)]
        exists: usize,
        #[arg(long)]
        forall: usize,
        #[arg(long)]
        terms: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExprCommand {
    /// One label per vertex.
    Trivial {
        #[arg(long)]
        program: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smallest width among several constructions.
    Heuristic {
        #[arg(long)]
        program: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replace the given edge signs by alpha.
    Join {
        #[arg(long)]
        expr: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        signs: Vec<cwasp::graph::Sign>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::Status::Invalid as u8)
        }
    }
}
