//! File formats, reports and the command implementations behind the `nrt` binary.

pub mod commands;
pub mod error;
pub mod format;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{run, Outcome};
pub use error::{CliError, Result};

#[derive(Parser, Debug, Clone)]
#[command(name = "nrt", version, about = "Optimum distributions, MDS codes in the NRT metric, and nets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Build an MDS code and its optimum distribution and write both to files.
    Generate,
    /// Check a point set (optimum, net, box counts) or a code (MDS, character sums).
    Verify,
    /// Weight spectrum of a code or point set, brute force against the closed forms.
    Spectrum,
    /// Dual code, box and weight enumerators, and the duality identities.
    Dual,
    /// Peano interleaving of a code or point set, or the composite construction report.
    Peano,
    /// Rewrite base-q digits in base p and report the weight bounds.
    Basechange,
    /// Exact star discrepancy of a point set.
    Discrepancy,
    /// Describe a finite field and its element labels.
    FieldInfo,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Optimum,
    Net,
    Counts,
    Mds,
    Characters,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Order {
    #[default]
    Interleave,
    Concatenate,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Opts {
    /// Characteristic of the field.
    #[arg(long, global = true)]
    pub p: Option<u32>,
    /// Extension degree.
    #[arg(long, global = true)]
    pub e: Option<u32>,
    /// Field order, a prime power.
    #[arg(long, global = true)]
    pub q: Option<u32>,
    /// Modulus coefficients, constant term first, e.g. "1,1,0,1".
    #[arg(long, global = true)]
    pub modulus: Option<String>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub s: Option<usize>,
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Peano block size.
    #[arg(long, global = true)]
    pub g: Option<usize>,
    #[arg(long, global = true)]
    pub t: Option<usize>,
    /// Net deficiency.
    #[arg(long, global = true)]
    pub delta: Option<usize>,
    /// Interpolation nodes as labels, e.g. "0,1,2,inf".
    #[arg(long, global = true)]
    pub nodes: Option<String>,
    /// Input point-set or code file; `.code` files are codes.
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    /// Output file, or output prefix for `generate`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, global = true, default_value_t)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// What `verify` checks.
    #[arg(long, value_enum, global = true)]
    pub kind: Option<Kind>,
    #[arg(long, value_enum, global = true, default_value_t)]
    pub order: Order,
    /// Apply the inverse Peano map.
    #[arg(long, global = true)]
    pub inverse: bool,
    /// Random characters tested by `verify --kind characters` and `dual`.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Largest number of words or points enumerated.
    #[arg(long, global = true, default_value_t = 1 << 22)]
    pub bound: u64,
}
