//! `straighten`: analyses of finite posets, their ideal lattices and the
//! compatible algebras with straightening laws on them.
//!
//! Exit status: 0 on success, 1 when a verification fails (corpus
//! counterexamples, a rejected certificate), 2 on usage or input errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use straighten_core::RealizationKind;

#[derive(Parser, Debug)]
#[command(name = "straighten", version, about = "Posets, ideal lattices and straightening laws")]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputFlags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct OutputFlags {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Leave out the `generated_at` field and wall-clock timings.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Summary of a poset and its ideal lattice.
    Analyze { poset: PathBuf },
    /// The ideals of the poset, in lattice order.
    Lattice {
        poset: PathBuf,
        /// Print the Hasse diagram of I(P) in DOT instead.
        #[arg(long)]
        dot: bool,
    },
    /// Vertices of the order or chain polytope.
    Vertices {
        poset: PathBuf,
        #[arg(long, value_enum)]
        polytope: PolytopeArg,
    },
    /// Straightening relations of one canonical realization.
    Relations {
        poset: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Compare the three canonical relation systems.
    Compare { poset: PathBuf },
    /// Decide whether I(P) has a unique compatible ASL.
    Unique {
        poset: PathBuf,
        /// Write the uniqueness certificate to this file.
        #[arg(long, value_name = "FILE")]
        certificate: Option<PathBuf>,
    },
    /// Check a uniqueness certificate against a poset.
    ValidateCert { certificate: PathBuf, poset: PathBuf },
    /// Search all compatible relation systems on I(P).
    Search {
        poset: PathBuf,
        #[arg(long, default_value_t = straighten_core::asl::DEFAULT_MAX_DEGREE)]
        max_degree: usize,
        /// Maximum number of partial relation systems to test.
        #[arg(long, default_value_t = straighten_core::asl::DEFAULT_SEARCH_BUDGET)]
        budget: u128,
    },
    /// Check the uniqueness criterion on every poset up to a given size.
    Corpus {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long)]
        parallel: bool,
    },
    /// Hasse diagram of the poset in DOT.
    Hasse { poset: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolytopeArg {
    Order,
    Chain,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum KindArg {
    Order,
    Chain,
    ChainDual,
}

impl From<KindArg> for RealizationKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Order => RealizationKind::Order,
            KindArg::Chain => RealizationKind::Chain,
            KindArg::ChainDual => RealizationKind::ChainDual,
        }
    }
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    VerificationFailed,
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
