//! Command-line grammar.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Parser)]
#[command(name = "qdvol", version, about = "Exact Masur-Veech volumes, Siegel-Veech constants and Lyapunov sums of principal strata")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain, global = true)]
    pub format: OutputFormat,

    /// Directory holding the persistent F-table cache.
    #[arg(long, env = "QDVOL_CACHE_DIR", global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Extra series order on top of the default working order.
    #[arg(long, default_value_t = 0, global = true)]
    pub truncation_margin: u32,

    /// Worker threads for table computation (defaults to the number of CPUs).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: Option<u32>,

    /// Report cache use and recursion work on stderr.
    #[arg(long, global = true)]
    pub stats: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Volume of the principal stratum with genus G and N poles.
    Volume {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        poles: u32,
    },
    /// A single coefficient F_{g,n}[k_1, ..., k_n].
    Fcoeff {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        npoints: u32,
        /// Comma-separated indices; all zero when omitted.
        #[arg(long, value_delimiter = ',')]
        indices: Option<Vec<u32>>,
    },
    /// Area Siegel-Veech constant and Lyapunov sum.
    Constants {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        poles: u32,
    },
    /// Fixed-genus polynomials p, q, r, s and the constants m_g, n_g.
    Poly {
        #[arg(long)]
        genus: u32,
    },
    /// One row per number of poles in a range.
    Table {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        poles_from: u32,
        #[arg(long)]
        poles_to: u32,
        #[arg(long, value_enum, default_value_t = Quantity::Volume)]
        quantity: Quantity,
        /// Add a floating-point column.
        #[arg(long)]
        approx: bool,
    },
    /// Large-n leading behaviour compared with the exact values.
    Asym {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        poles: u32,
    },
    /// Fill the cache with every F-table satisfying 2g - 2 + n <= MAX_CHI.
    Precompute {
        #[arg(long, default_value_t = 7)]
        max_chi: u32,
    },
    /// Run the built-in acceptance checks.
    Selftest {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Volume,
    Carea,
    Lplus,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Volume => "volume",
            Quantity::Carea => "carea",
            Quantity::Lplus => "lplus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Quick,
    Full,
}
