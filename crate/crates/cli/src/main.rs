mod commands;
mod source;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

pub use commands::Status;

/// Exact verification of average kernel sizes, relation modules of partial
/// colourings and class numbers over finite rings.
#[derive(Parser, Debug)]
#[command(name = "askzeta", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Emit canonical JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every random choice (unit matrices, sampled points).
    #[arg(long, global = true, default_value_t = commands::DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads for enumeration loops (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Enumeration budget (number of terms or elements).
    #[arg(long, global = true)]
    pub budget: Option<u128>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide admissibility of a partial colouring by the board game.
    CheckAdmissible(commands::CheckAdmissibleArgs),
    /// Average kernel size of a module over one ring.
    Ask(commands::AskArgs),
    /// Compare zeta coefficients with a catalog prediction.
    ZetaVerify(commands::ZetaVerifyArgs),
    /// Number of module elements of each rank over a finite field.
    RankDist(commands::RankDistArgs),
    /// Check that the orbit matrix has constant rank at unit points.
    ConstantRank(commands::ConstantRankArgs),
    /// Compare orbit-module profiles of a submodule and an ambient module.
    OrbitalCheck(commands::OrbitalCheckArgs),
    /// Count conjugacy classes of a BCH or Baer group.
    Cc(commands::CcArgs),
    /// Print a module representation as JSON.
    DumpRep(commands::DumpRepArgs),
    /// Run a manifest of command lines and aggregate the results.
    Batch(commands::BatchArgs),
}

/// Parses `argv` (without the program name) and runs it, returning the exit status.
pub fn run(argv: &[String], depth: usize) -> Status {
    let full = std::iter::once("askzeta".to_string()).chain(argv.iter().cloned());
    let cli = match Cli::try_parse_from(full) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Status::Pass,
                _ => Status::Usage,
            };
        }
    };
    if let Some(n) = cli.global.threads {
        // a second build (inside batch) keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    commands::dispatch(&cli, depth)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    ExitCode::from(run(&argv, 0).code())
}
