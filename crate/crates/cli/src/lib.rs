//! The `pqx` command line: argument parsing, command handlers and the
//! `verify` claim registry. `main.rs` only forwards to [`run`].

pub mod commands;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Version of every JSON document the tool prints.
pub const SCHEMA_VERSION: u32 = 1;

/// The JSON Schema describing `--json` output.
pub const OUTPUT_SCHEMA: &str = include_str!("../schema/pqx-output.schema.json");

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pqx", version, about = "Extremal hypergraphs with the (p,q)-property and q-wise Kneser hypergraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide the (p,q)-property of a hypergraph file; exit 1 on violation
    Check(CheckArgs),
    /// Write a split hypergraph, a split-family member or K_{p-1} plus an edge
    Construct(ConstructArgs),
    /// Evaluate phi_k(n,p,q) = C(n,k) - C(n-t,k) + r
    Phi(ParamArgs),
    /// Exact extremal number ex_k(n, D_k(p,q)) with a witness
    Extremal(ExtremalArgs),
    /// Build a q-wise Kneser hypergraph and compute its invariants
    Kneser(KneserArgs),
    /// Evaluate the chromatic number formula for q-wise Kneser hypergraphs
    Sarkaria(ParamArgs),
    /// Run the registered claim checks; exit 1 if any fails
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// `.hg` file, or a JSON hypergraph when the content starts with `{`
    pub input: PathBuf,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// F_k(n,t): every k-subset meeting [t]
    Split,
    /// F_k(n,t,r): the split hypergraph plus r edges avoiding [t]
    Member,
    /// K_{p-1} plus a pendant edge, on p vertices
    CompletePlusEdge,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub r: usize,
    #[arg(long)]
    pub p: Option<usize>,
    /// Place the r extra edges at random with this seed instead of colex-first
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the `.hg` file here instead of standard output
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Stop after this many search nodes and report bounds
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    /// Stop after this many seconds and report bounds
    #[arg(long)]
    pub budget_seconds: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Args)]
pub struct ExtremalArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
    /// Enumerate every edge subset instead of branch and bound
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Include node counts and elapsed time (not deterministic)
    #[arg(long)]
    pub stats: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChiFMethod {
    Lp,
    Transitive,
    Both,
}

#[derive(Debug, Args)]
pub struct KneserArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
    /// Write the hypergraph as `.hg` and its label table to `<PATH>.labels`
    #[arg(long)]
    pub emit: Option<PathBuf>,
    #[arg(long)]
    pub alpha: bool,
    #[arg(long)]
    pub chi: bool,
    #[arg(long = "chi-f")]
    pub chi_f: bool,
    #[arg(long, value_enum, default_value_t = ChiFMethod::Both)]
    pub method: ChiFMethod,
    #[arg(long, default_value_t = 64)]
    pub max_vertices: u128,
    #[arg(long, default_value_t = 100_000_000)]
    pub max_families: u128,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = verify::Suite::Paper)]
    pub suite: verify::Suite,
    /// Largest p examined (each suite has its own default)
    #[arg(long)]
    pub max_p: Option<usize>,
    /// Largest n examined (each suite has its own default)
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    pub seed: u64,
    /// Random instances for the matching suite
    #[arg(long, default_value_t = verify::DEFAULT_SAMPLES)]
    pub samples: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Record elapsed milliseconds per claim (not deterministic)
    #[arg(long)]
    pub timings: bool,
    #[arg(long)]
    pub json: bool,
}

/// Parses `args` (program name first) and runs the command, writing to
/// `out` and `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_ERROR
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match commands::dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}
