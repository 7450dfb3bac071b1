//! `fdkg`: ceremonies, elections, liveness sweeps and cost estimates.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::GroupName;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
    #[error(transparent)]
    Protocol(#[from] fdkg::Error),
}

#[derive(Parser, Debug)]
#[command(name = "fdkg", version, about = "Federated distributed key generation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a key-generation ceremony and reconstruct the joint secret.
    Ceremony(KeygenArgs),
    /// Monte-Carlo liveness sweep, written as CSV.
    Simulate(SimulateArgs),
    /// Key generation, voting and tally.
    Election(ElectionArgs),
    /// Broadcast size of an election.
    Cost(CostArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// TOML scenario file; flags take precedence over its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory (ceremony, election) or file (simulate, cost).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct KeygenArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub group: Option<GroupName>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ElectionArgs {
    #[command(flatten)]
    pub keygen: KeygenArgs,
    #[arg(long)]
    pub candidates: Option<u32>,
    /// Slot bound; defaults to n.
    #[arg(long)]
    pub n_bound: Option<u64>,
    /// Candidate per voter, e.g. `1,2,2,1`.
    #[arg(long, value_delimiter = ',')]
    pub votes: Option<Vec<u32>>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',')]
    pub p: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub r: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub k: Option<Vec<usize>>,
    /// Absolute thresholds.
    #[arg(long, value_delimiter = ',', conflicts_with = "t_ratio")]
    pub t: Option<Vec<usize>>,
    /// Thresholds as fractions of k.
    #[arg(long, value_delimiter = ',')]
    pub t_ratio: Option<Vec<f64>>,
    #[arg(long)]
    pub trials: Option<u32>,
    /// ER or BA.
    #[arg(long)]
    pub topology: Option<String>,
    /// per-trial or per-cell.
    #[arg(long)]
    pub ba_scope: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CostArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub dealers: Option<u64>,
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub voters: Option<u64>,
    #[arg(long)]
    pub direct_revealers: Option<u64>,
    #[arg(long)]
    pub shares_revealed: Option<u64>,
    /// Sum the payloads of a transcript file instead of using the size table.
    #[arg(long)]
    pub measured: Option<PathBuf>,
    /// Print `kind,bytes` rows instead of a table.
    #[arg(long)]
    pub csv: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Ceremony(a) => commands::ceremony(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::Election(a) => commands::election(a),
        Command::Cost(a) => commands::cost(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Protocol(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
