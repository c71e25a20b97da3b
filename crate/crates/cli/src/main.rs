//! `nestfock`: compute, verify and export transition matrices and ring
//! structure constants for the incidence Hilbert schemes.

mod commands;
mod keys;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nestfock::basis_change::{CACHE_DIR_ENV, DEFAULT_CACHE_DIR};
use nestfock::BasisTag;

#[derive(Parser, Debug)]
#[command(name = "nestfock", version, about)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Directory for cached transition matrices.
    #[arg(long, global = true, env = CACHE_DIR_ENV, default_value = DEFAULT_CACHE_DIR)]
    pub cache_dir: PathBuf,

    /// Compute everything from scratch without reading or writing the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,

    /// Largest degree any command is allowed to touch.
    #[arg(long, global = true, default_value_t = 12)]
    pub max_degree: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    B1,
    B2,
    B3,
    HilbFixed,
    HilbP,
    HilbL,
}

impl From<Basis> for BasisTag {
    fn from(b: Basis) -> Self {
        match b {
            Basis::B1 => BasisTag::B1,
            Basis::B2 => BasisTag::B2,
            Basis::B3 => BasisTag::B3,
            Basis::HilbFixed => BasisTag::HilbFixed,
            Basis::HilbP => BasisTag::HilbP,
            Basis::HilbL => BasisTag::HilbL,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProductBasis {
    /// `⋆̃` on fixed points `[λ,μ]`.
    B1,
    /// `⋆̃` on operator monomials `t̃^i ã_{-ν}|0⟩`.
    B2,
    /// Ordinary cup product of `S^[n,n+1]` on reduced monomials.
    Ordinary,
    /// `⋆` on Hilbert scheme fixed points `[λ]`.
    Hilb,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Transition matrix between two bases of one degree.
    Transition {
        #[arg(long, value_enum)]
        from: Basis,
        #[arg(long, value_enum)]
        to: Basis,
        #[arg(short = 'n', long)]
        degree: usize,
    },
    /// Structure constants of a product, as a full table or a single product.
    Product {
        #[arg(long, value_enum)]
        basis: ProductBasis,
        #[arg(short = 'n', long)]
        degree: usize,
        /// First factor (e.g. `1/2`, `0:1`, `2,1` or JSON).
        #[arg(long, requires = "b")]
        a: Option<String>,
        /// Second factor.
        #[arg(long, requires = "a")]
        b: Option<String>,
    },
    /// Betti numbers of `S^[n,n+1]` for every n up to the bound.
    Betti {
        #[arg(long)]
        max_n: usize,
    },
    /// Hook products, Euler classes and tangent weights of every pair of degree n.
    Pairs {
        #[arg(short = 'n', long)]
        degree: usize,
    },
    /// Run named check suites.
    Verify {
        /// hooks, euler, heisenberg, loop, pairing, roundtrip, phi, diagrams, ordinary or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_n: usize,
    },
    /// Inspect or clear the matrix cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum CacheAction {
    /// Print the cache directory.
    Path,
    /// Delete every cached matrix.
    Clear,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
