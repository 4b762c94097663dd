use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "chainpoly",
    version,
    about = "Triangulation counts and growth constants of chains"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Config {
    /// Number system; defaults to exact up to 512 edges and extended float above
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    /// Worker threads; never changes the output
    #[arg(long, global = true, env = "CHAINPOLY_THREADS", value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Decimals for roots and floating counts
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u8).range(0..=15))]
    pub digits: u8,
    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            mode: None,
            threads: None,
            format: Format::Text,
            digits: 6,
            out: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Triangulation polynomials and counts of one chain
    Poly {
        formula: String,
        /// Also print the coefficients of T and T_flip
        #[arg(long)]
        coeffs: bool,
    },
    /// Counts of the Koch chains K_0 .. K_max
    Koch { max_s: u32 },
    /// Growth constants of poly and twin chains over a base chain
    Polytwin {
        #[arg(required_unless_present = "koch", conflicts_with = "koch")]
        formula: Option<String>,
        /// Use K_0 .. K_MAX as base chains
        #[arg(long, value_name = "MAX")]
        koch: Option<u32>,
    },
    /// Cross-check the engine against the oracles and identities
    Verify {
        #[arg(value_enum, default_value_t = Level::Quick)]
        level: Level,
        /// Corrupt engine results, to check that the suites notice
        #[arg(long)]
        inject_fault: bool,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Exact rational coordinates of a chain
    Realize { formula: String },
    /// List all chains with n edges
    Enumerate {
        n: usize,
        /// Only print the tallies
        #[arg(long)]
        count: bool,
    },
}
