use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quconv::analysis::Budgets;
use quconv::harness::{cmd_analyze, cmd_search, cmd_verify, SearchConfig, SearchMode, Target};

#[derive(Parser)]
#[command(name = "quconv", version, about = "State-diagram analysis of qudit convolutional encoders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one encoder file and write a report.
    Analyze {
        #[arg(long)]
        encoder: PathBuf,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a property suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        p: Vec<u64>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate or sample encoders and report those matching a target.
    Search(SearchArgs),
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, conflicts_with = "samples")]
    exhaustive: bool,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    gates: usize,
    #[arg(long, default_value = "recursive-noncatastrophic")]
    target: Target,
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long, default_value_t = 20)]
    max_witnesses: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match cli.command {
        Command::Analyze { encoder, max_len, out } => cmd_analyze(&encoder, max_len, out.as_deref()),
        Command::Verify { suite, p, trials, seed, out } => cmd_verify(&suite, &p, trials, seed, out.as_deref()),
        Command::Search(a) => {
            if a.exhaustive == a.samples.is_some() {
                eprintln!("error: pass exactly one of --exhaustive or --samples N");
                return ExitCode::from(2);
            }
            let config = SearchConfig {
                mode: if a.exhaustive { SearchMode::Exhaustive } else { SearchMode::Sampled },
                samples: a.samples.unwrap_or(0),
                seed: a.seed,
                gate_count: a.gates,
                target: a.target,
                workers: a.workers,
                max_witnesses: a.max_witnesses,
                budgets: Budgets::from_env(),
                ..SearchConfig::exhaustive(a.p, a.m, a.n, a.k)
            };
            cmd_search(&config, a.out.as_deref())
        }
    };
    ExitCode::from(code as u8)
}
