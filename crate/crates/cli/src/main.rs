//! `mw`: a command-line workbench for matroids, realization spaces and
//! Chow rings.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "mw", version, about = "Matroid realization spaces, invariants and Chow rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Cap on S-pair reductions per Gröbner basis.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_gb: Option<u64>,
    /// Cap on candidate points per finite-field search.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_search: u64,
    /// Seed for `corpus --sample`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Ell {
    Alpha,
    Beta,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Catalog matroid: fano, non_fano, vamos, moebius_kantor, pappus, k4 or
    /// uniform(r,n).
    #[arg(long)]
    pub name: Option<String>,
    /// Matroid JSON file (`-` for stdin).
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank, bases, circuits, flats.
    Info {
        #[command(flatten)]
        source: Source,
        /// Also compute the order of the automorphism group.
        #[arg(long)]
        aut: bool,
    },
    /// Realization space over one characteristic, or a profile over 0 and
    /// the primes up to 13.
    Realization {
        #[command(flatten)]
        source: Source,
        #[arg(long = "char", default_value_t = 0, conflicts_with = "profile")]
        characteristic: u64,
        #[arg(long)]
        profile: bool,
        #[arg(long)]
        no_simplify: bool,
    },
    /// Realizability over every finite field of size at most `qmax`.
    RealizableQ {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 13)]
        qmax: u64,
    },
    /// Tutte and characteristic polynomials, log-concavity, Ingleton.
    Invariants {
        #[command(flatten)]
        source: Source,
    },
    /// Chow ring and the Kähler checks in degree `k`.
    Chow {
        #[command(flatten)]
        source: Source,
        /// Defaults to 1 when admissible, else 0.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Ell::Beta)]
        ell: Ell,
    },
    /// Batch action over a corpus file (the bundled catalog corpus when no
    /// file is given).
    Corpus {
        #[arg(long)]
        file: Option<PathBuf>,
        /// `simple` or `rank=K`; repeat to combine.
        #[arg(long)]
        filter: Vec<String>,
        /// `realizable-char0` or `realizable-char=P`.
        #[arg(long, default_value = "realizable-char0")]
        action: String,
        /// Run on a seeded random sample of this many entries.
        #[arg(long)]
        sample: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("mw: error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Precondition(_) => 4,
        }
    }
}
