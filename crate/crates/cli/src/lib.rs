//! Command-line front end: knot-table ingestion, batch runs, and report
//! emission for the untwisting-number obstruction pipeline.

pub mod commands;
pub mod ingest;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(
    name = "untwist",
    version,
    about = "Obstructions and bounds for untwisting numbers of knots",
    long_about = "Decides whether an alternating, signature-zero knot can be unknotted by a \
single positive or negative generalized crossing change, using exact correction-term \
tables of the branched double cover, and computes concordance lower bounds on \
p-untwisting numbers."
)]
pub struct Cli {
    /// Input file (JSON knot record, JSON matrix, record array, or CSV)
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Output destination: a path, or "stdout"
    #[arg(long, global = true, default_value = "stdout")]
    pub output: String,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Cap on the number of group isomorphisms a matching search may visit
    #[arg(long, global = true, env = "UNTW_BUDGET", default_value_t = 1_000_000)]
    pub budget: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Goeritz matrix and determinant of an alternating PD diagram
    Goeritz {
        /// Use the mirror diagram
        #[arg(long)]
        mirror: bool,
        /// Checkerboard coloring: "auto" picks the calibrated convention,
        /// 0/1 force a color class
        #[arg(long, default_value = "auto")]
        coloring: String,
    },
    /// Correction-term table of a negative definite matrix or knot record
    Dinv {
        /// Reduce values to their representatives in [0, 2)
        #[arg(long)]
        mod2: bool,
    },
    /// Untwisting-number-one obstruction verdicts
    Obstruct {
        /// Which generalized crossing change sign to test: +, -, or both
        #[arg(long, default_value = "both", allow_hyphen_values = true)]
        sign: String,
    },
    /// Lower bounds on tu_q from the tau and s invariants
    Bounds {
        /// A single q or an inclusive range like 1..4
        #[arg(long)]
        q: String,
    },
    /// Validate a CSV knot table into knot-record JSON
    Ingest,
}

/// Run the CLI; the returned code is the process exit status. Verdicts never
/// produce a nonzero code, only operational errors do.
pub fn run(cli: Cli) -> i32 {
    match commands::dispatch(&cli) {
        Ok(exit) => exit,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
