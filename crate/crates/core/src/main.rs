use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use shortchains::cli::{
    corollary12_command, examples_command, knit_command, short_chain_command, theorem1_command, CliError, Exit, Limits,
};

#[derive(Parser)]
#[command(name = "shortchains", version, about = "Short chains, AR quivers and tilting certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LimitArgs {
    /// Stop knitting after this many indecomposables.
    #[arg(long, default_value_t = Limits::default().max_modules)]
    max_modules: usize,
    /// Stop knitting at modules of this total dimension.
    #[arg(long, default_value_t = Limits::default().max_total_dim)]
    max_total_dim: usize,
    #[arg(long, default_value_t = Limits::default().nilpotency_bound)]
    nilpotency_bound: usize,
    /// Total dimension bound for brute-force search over infinite type.
    #[arg(long, default_value_t = Limits::default().search_bound)]
    search_bound: usize,
    /// Cap on candidate representations examined by brute-force search.
    #[arg(long, default_value_t = Limits::default().budget)]
    budget: usize,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits {
            max_modules: self.max_modules,
            max_total_dim: self.max_total_dim,
            nilpotency_bound: self.nilpotency_bound,
            search_bound: self.search_bound,
            budget: self.budget,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Knit the Auslander-Reiten quiver from the projectives.
    Knit {
        algebra: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Decide whether a module is the middle of a short chain.
    ShortChain {
        algebra: PathBuf,
        module: PathBuf,
        /// Search only these indecomposables (module files).
        #[arg(long = "candidate")]
        candidates: Vec<PathBuf>,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Build the tilting certificate M = Hom_H(T, I) for a not-middle module.
    Theorem1 {
        algebra: PathBuf,
        module: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Check that End(M) is hereditary for a not-middle module.
    Corollary12 {
        algebra: PathBuf,
        module: PathBuf,
        #[arg(long = "candidate")]
        candidates: Vec<PathBuf>,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Write the input files of a worked example (5.1 or 5.2).
    Examples {
        id: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

fn run(cli: Cli) -> Result<Exit, CliError> {
    let (outcome, out) = match cli.command {
        Command::Knit { algebra, limits, out } => (knit_command(&algebra, &limits.limits())?, out),
        Command::ShortChain { algebra, module, candidates, limits, out } => {
            (short_chain_command(&algebra, &module, &candidates, &limits.limits())?, out)
        }
        Command::Theorem1 { algebra, module, limits, out } => (theorem1_command(&algebra, &module, &limits.limits())?, out),
        Command::Corollary12 { algebra, module, candidates, limits, out } => {
            (corollary12_command(&algebra, &module, &candidates, &limits.limits())?, out)
        }
        Command::Examples { id, n, out_dir } => (examples_command(&id, n, &out_dir)?, None),
    };
    outcome.emit(out.as_deref())?;
    Ok(outcome.exit)
}

fn main() -> ExitCode {
    let exit = match run(Cli::parse()) {
        Ok(exit) => exit,
        Err(e) => {
            eprintln!("shortchains: {e}");
            Exit::InputError
        }
    };
    ExitCode::from(exit.code() as u8)
}
