//! `ffmoduli`: batch driver for the counting and circle-method kernels.
//! Every command writes one JSON artifact; the exit code is 0 when all of
//! its assertions hold, 1 when one fails, and 2 on bad input.

mod artifact;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use ffmoduli::counting::Strategy;

#[derive(Parser, Debug)]
#[command(name = "ffmoduli", version, about = "Exact counting and circle-method checks over F_q[u]")]
pub struct Cli {
    #[command(flatten)]
    pub run: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every command.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Hypersurface description (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Degree of the maps.
    #[arg(long, global = true, default_value_t = 1)]
    pub e: u32,
    /// naive, root-first or linear-solve.
    #[arg(long, global = true, default_value = "root-first")]
    pub strategy: Strategy,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for randomized sweeps; recorded in the output.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on enumerated points.
    #[arg(long, global = true)]
    pub budget_box: Option<BigUint>,
    /// Cap on grid size times box size.
    #[arg(long, global = true)]
    pub budget_grid: Option<BigUint>,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct PieceArgs {
    /// Index j of the bihomogeneous piece.
    #[arg(long, default_value_t = 1)]
    pub j: u32,
    /// Major-arc level J.
    #[arg(long, default_value_t = 1)]
    pub level: u32,
    /// Override the box exponent of x.
    #[arg(long)]
    pub p1: Option<u32>,
    /// Override the box exponent of y.
    #[arg(long)]
    pub p2: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact N(e) and the ratio N / q^muhat.
    CountN,
    /// N(e) by counting and by the exact circle-method integral.
    CircleExact,
    /// The expansion of f(g) against the forms F_j.
    VerifyDecomposition {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Sweep the whole degree box instead of sampling.
        #[arg(long)]
        full: bool,
    },
    /// Vanishing past the degree and the diagonal identity for random polynomials.
    WeylIdentities {
        #[arg(long, default_value_t = 5)]
        p: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long, default_value_t = 2)]
        vars: usize,
    },
    /// Decoupling inequality on the exact alpha grid.
    Decouple {
        /// Random grid points; 0 sweeps the whole grid.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// The bound on T_j on the exact alpha grid.
    LemmaTBound {
        /// Only this piece.
        #[arg(long)]
        j: Option<usize>,
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// N1 and N2 counts and the chain between them at one alpha.
    NCounts {
        #[command(flatten)]
        piece: PieceArgs,
        /// Fraction digits of alpha, most significant first.
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<u32>,
    },
    /// The shrinking inequality on random symmetric systems.
    Shrink {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        max_exponent: i64,
        #[arg(long, default_value_t = 2)]
        size: u32,
    },
    /// Dirichlet approximation, checked against exhaustive search.
    Approx {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, default_value_t = 2)]
        m: u32,
        /// Fraction digits of alpha; random samples when absent.
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<u32>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Major-arc membership at one alpha.
    MajorArc {
        #[command(flatten)]
        piece: PieceArgs,
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<u32>,
    },
    /// The two alternatives on the whole grid.
    Dichotomy {
        #[command(flatten)]
        piece: PieceArgs,
        /// Use this sigma instead of estimating it.
        #[arg(long)]
        sigma: Option<i64>,
    },
    /// sigma_G for one piece or all pieces.
    Sigma {
        #[arg(long)]
        j: Option<u32>,
        #[arg(long, default_value_t = 3)]
        m_max: u32,
    },
    /// The integral of |E|^rho split into arcs and shells.
    MeanValue {
        #[command(flatten)]
        piece: PieceArgs,
        /// Exponent rho, an integer or a fraction a/b.
        #[arg(long)]
        rho: num_rational::Rational64,
        #[arg(long)]
        sigma: Option<i64>,
    },
    /// Vanishing of the next form for Fermat hypersurfaces in small characteristic.
    Smallchar {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Use this degree instead of (e+1)! p + 1 (control runs; no assertion).
        #[arg(long)]
        d: Option<u32>,
    },
    /// N / q^muhat for every config in a directory.
    RatioReport {
        #[arg(long)]
        dir: PathBuf,
    },
    /// The full acceptance suite.
    Acceptance {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(&cli) {
        Ok(outcome) => outcome,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
