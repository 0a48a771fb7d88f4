//! `overlapfree` command-line tool.

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "overlapfree", version, about = "Construct, verify, count and bound overlap-free codes")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    format: Format,
    /// Worker threads for internal parallelism (default: all available).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a codebook file for t-overlaps with t1 <= t <= t2.
    Verify {
        #[arg(long)]
        file: std::path::PathBuf,
        #[arg(long)]
        t1: u32,
        #[arg(long)]
        t2: u32,
    },
    /// Largest (t1, t2)-overlap-free code by exhaustive search (n <= 10).
    Oracle {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t1: u32,
        #[arg(long)]
        t2: u32,
        /// Return the lexicographically smallest optimum.
        #[arg(long)]
        canonical: bool,
        #[command(flatten)]
        emit: EmitArgs,
    },
    /// Doubling construction for k = 1..=kmax.
    Doubling {
        #[arg(long)]
        kmax: u32,
    },
    /// m-minimum construction.
    Mmin {
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        emit: EmitArgs,
        /// Codeword length of the emitted codebook (default 2k).
        #[arg(long)]
        n: Option<u32>,
    },
    /// Zero block construction.
    Zeroblock {
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        emit: EmitArgs,
        /// Codeword length of the emitted codebook (default 2k).
        #[arg(long)]
        n: Option<u32>,
    },
    /// Gilbert–Levenshtein non-overlapping code of length n.
    Gl {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        emit: EmitArgs,
    },
    /// Exact search for optimal independent sets of the overlap graph.
    GraphOpt {
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Product)]
        objective: ObjectiveArg,
        /// Return the optimum with the lexicographically smallest prefix set.
        #[arg(long)]
        canonical: bool,
        /// Give up after this many seconds (default: none for k <= 6, 60 above).
        #[arg(long)]
        time_limit: Option<f64>,
    },
    /// Every applicable upper and lower bound for length n and overlap range k.
    Bounds {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// n-step Fibonacci number F_i^(z).
    Fib {
        #[arg(long)]
        z: u32,
        #[arg(long, allow_hyphen_values = true)]
        i: i64,
    },
    /// Reproduce a published table and compare with the embedded values.
    Tables {
        /// Table id: I, II, III, IV or V.
        #[arg(long)]
        id: String,
        #[arg(long)]
        kmin: Option<u32>,
        #[arg(long)]
        kmax: Option<u32>,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct EmitArgs {
    /// Write the codebook to this file.
    #[arg(long)]
    emit: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    /// Maximize |X_C| * |Y_C|.
    Product,
    /// Maximize |X_C| + |Y_C|.
    Cardinality,
    /// Maximize the product, then the cardinality among product optima.
    Tabled,
}

fn run(cli: Cli) -> Result<commands::Outcome, CliError> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot configure threads: {e}")))?;
    }
    let fmt = cli.format;
    match cli.command {
        Command::Verify { file, t1, t2 } => commands::verify(&file, t1, t2, fmt),
        Command::Oracle { n, t1, t2, canonical, emit } => commands::oracle(n, t1, t2, canonical, emit.emit.as_deref(), fmt),
        Command::Doubling { kmax } => commands::doubling(kmax, fmt),
        Command::Mmin { k, emit, n } => commands::mmin(k, emit.emit.as_deref(), n, fmt),
        Command::Zeroblock { k, emit, n } => commands::zeroblock(k, emit.emit.as_deref(), n, fmt),
        Command::Gl { n, emit } => commands::gl(n, emit.emit.as_deref(), fmt),
        Command::GraphOpt { k, objective, canonical, time_limit } => {
            commands::graph_opt(k, objective, canonical, time_limit, fmt)
        }
        Command::Bounds { n, k, q } => commands::bounds(n, k, q, fmt),
        Command::Fib { z, i } => commands::fib(z, i, fmt),
        Command::Tables { id, kmin, kmax } => commands::tables(&id, kmin, kmax, fmt),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
