//! `steklov`: Steklov eigenvalues of trees with leaf boundary.
//!
//! Trees are given in shorthand (`path:L`, `star:K`, `spider:3,2,1`,
//! `ds:2,1/2`, `as:r,q,c,t`) or as an edge-list file via `--file`.
//! Exit codes: 0 ok, 1 usage error, 2 domain error, 3 verification mismatch.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use commands::{Failure, Method};
use output::Format;

#[derive(Parser)]
#[command(name = "steklov", version, about = "Steklov eigenvalues of trees with leaf boundary")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TreeInput {
    /// Tree shorthand, e.g. `spider:3,2,1` or `ds:2,1/2`.
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    tree: Option<String>,

    /// Read the tree from an edge-list file (first line n, then `u v` per edge).
    #[arg(long)]
    file: Option<PathBuf>,
}

impl TreeInput {
    fn load(&self) -> Result<steklov_core::Tree, Failure> {
        commands::load_tree(self.tree.as_deref(), self.file.as_ref())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full Steklov spectrum.
    Spectrum(TreeInput),
    /// Second Steklov eigenvalue λ₂.
    Lambda2 {
        #[command(flatten)]
        input: TreeInput,
        #[arg(long, value_enum, default_value_t = Method::Matrix)]
        method: Method,
    },
    /// Extremal trees of order n and odd diameter D.
    Classify {
        n: usize,
        #[arg(value_name = "D")]
        d: usize,
    },
    /// The two balanced candidate profiles for (n, D).
    Candidates {
        n: usize,
        #[arg(value_name = "D")]
        d: usize,
    },
    /// Σ_{r,M}(q) over feasible q for M = 1..=M-max, with unimodality verdicts.
    Sweep {
        #[arg(long)]
        r: usize,
        #[arg(long = "M-max", value_name = "M")]
        m_max: usize,
    },
    /// Greedy λ₂ ascent trace ending at a balanced spider.
    Reduce(TreeInput),
    /// Certify the classification against brute-force enumeration.
    Verify {
        n: usize,
        #[arg(value_name = "D")]
        d: usize,
        /// Verify every order from D+1 up to n.
        #[arg(long)]
        all_orders: bool,
        /// Worker threads; 0 picks one per core.
        #[arg(long, env = "STEKLOV_JOBS", default_value_t = 0)]
        jobs: usize,
        /// Include per-order wall time (output is then no longer reproducible).
        #[arg(long)]
        timing: bool,
    },
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let (report, mismatch) = match &cli.command {
        Command::Spectrum(input) => (commands::spectrum(&input.load()?)?, false),
        Command::Lambda2 { input, method } => (commands::lambda2(&input.load()?, *method)?, false),
        Command::Classify { n, d } => (commands::classify_cmd(*n, *d)?, false),
        Command::Candidates { n, d } => (commands::candidates_cmd(*n, *d)?, false),
        Command::Sweep { r, m_max } => (commands::sweep(*r, *m_max)?, false),
        Command::Reduce(input) => (commands::reduce(&input.load()?)?, false),
        Command::Verify {
            n,
            d,
            all_orders,
            jobs,
            timing,
        } => commands::verify(*n, *d, *all_orders, *jobs, *timing)?,
    };
    Ok((report.render(cli.format), mismatch))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok((text, mismatch)) => {
            print!("{text}");
            if mismatch {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
