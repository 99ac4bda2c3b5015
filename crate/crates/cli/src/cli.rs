//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mum_core::ConsolidationPolicy;

#[derive(Debug, Parser)]
#[command(name = "mum", version, about = "Multiplicative Modular Nim: analysis, tables, play")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a position and show its product, mumber and hint.
    Analyze {
        #[command(flatten)]
        position: PositionArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print one of the reference tables.
    Table(TableArgs),
    /// Search the game tree and compare with the product rule.
    Solve {
        #[command(flatten)]
        position: PositionArgs,
        /// Maximum number of positions the search may visit.
        #[arg(long, default_value_t = 2_000_000)]
        budget: usize,
    },
    /// Two players at one terminal.
    Play {
        #[command(flatten)]
        position: PositionArgs,
    },
    /// Run the HTTP session service.
    Serve {
        #[arg(long, env = "MUM_STORE_DIR", default_value = "mum-sessions")]
        store: PathBuf,
        #[arg(long, env = "MUM_PORT", default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

#[derive(Debug, Args, Clone)]
pub struct PositionArgs {
    /// Integer modulus (numeric game).
    #[arg(long = "mod", value_name = "M", conflicts_with = "field")]
    pub modulus: Option<u64>,
    /// Finite field as p,n,bits (e.g. 2,3,0b1011) or "aes".
    #[arg(long, value_name = "P,N,BITS")]
    pub field: Option<String>,
    /// Comma-separated heap values.
    #[arg(long, allow_hyphen_values = true)]
    pub heaps: String,
    #[arg(long, default_value_t = ConsolidationPolicy::StrandedOnly)]
    pub policy: ConsolidationPolicy,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub kind: TableKind,
    /// Prime modulus for the mex table.
    #[arg(long = "mod", default_value_t = 5)]
    pub modulus: u64,
    /// Largest single heap in the mex table.
    #[arg(long, default_value_t = 7)]
    pub max: u64,
    /// Which part of the mex table to print.
    #[arg(long, value_enum, default_value_t = MexPart::Single)]
    pub part: MexPart,
    /// Field for the inverse table.
    #[arg(long, default_value = "2,3,0b1011")]
    pub field: String,
    /// Heap values for the mum15 table.
    #[arg(long, default_value = "11,13,14,16")]
    pub values: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Mex,
    Inverses,
    Mum15,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MexPart {
    Single,
    States,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}
