use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sdlab_core::dilation::DEFAULT_GRID;
use sdlab_core::kms::DEFAULT_MAX_DEGREE;
use sdlab_core::numrange::DEFAULT_CIRCLE_SAMPLES;

use crate::config::{RunConfig, DEFAULT_SEED};
use crate::verify::Suite;

#[derive(Debug, Parser)]
#[command(
    name = "sdlab",
    version,
    about = "Zero-dilation indices and numerical ranges of structured complex matrices"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Number of angles in the θ grid for zero-dilation sweeps
    #[arg(long, global = true, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
    /// Absolute eigenvalue threshold for inertia counts (default: scaled machine epsilon)
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for the random verification corpora
    #[arg(long, global = true, env = "SDLAB_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Largest trace-word degree searched by `kms usim`
    #[arg(long = "max-degree", global = true, default_value_t = DEFAULT_MAX_DEGREE)]
    pub max_degree: usize,
    /// Number of boundary angles for numerical-range sampling
    #[arg(long, global = true, default_value_t = DEFAULT_CIRCLE_SAMPLES)]
    pub samples: usize,
    /// Output path (matrix JSON, report JSON, or CSV/SVG prefix)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl GlobalOpts {
    pub fn config(&self) -> RunConfig {
        RunConfig {
            grid_size: self.grid,
            tol: self.tol,
            max_word_degree: self.max_degree,
            boundary_samples: self.samples,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zero-dilation index of a matrix file by θ sweep
    Zdi { file: PathBuf },
    /// Generalized companion matrices
    #[command(subcommand)]
    Companion(CompanionCmd),
    /// Block KMS matrices
    #[command(subcommand)]
    Kms(KmsCmd),
    /// Sample the numerical-range boundary to CSV and SVG
    Numrange { file: PathBuf },
    /// Run verification suites and emit a JSON report
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Extra companion spec that must satisfy the bound hypotheses
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CompanionCmd {
    /// Assemble the matrix of a companion spec
    Build { spec: PathBuf },
    /// Closed-form against direct determinant of Re(ωC) (even m)
    Det { spec: PathBuf },
    /// Guaranteed index range and the sweep value
    Bounds { spec: PathBuf },
    /// The family attaining every value in the odd-m range
    Interp {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum KmsCmd {
    /// Assemble K_m(A)
    Build {
        #[arg(long)]
        m: usize,
        file: PathBuf,
    },
    /// Zero-dilation index of K_m(A) by formula and by sweep
    Zdi {
        #[arg(long)]
        m: usize,
        file: PathBuf,
    },
    /// Similarity of K_m(A) and K_m(B)
    Similar {
        #[arg(long)]
        m: usize,
        a: PathBuf,
        b: PathBuf,
    },
    /// Search for a trace word separating K_m(A) and K_m(B) up to unitary similarity
    Usim {
        #[arg(long)]
        m: usize,
        a: PathBuf,
        b: PathBuf,
    },
    /// Jordan block counts of J_m(0)⊗A
    Nk {
        #[arg(long)]
        m: usize,
        file: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Companion,
    Kms,
    Numrange,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Companion => Suite::Companion,
            SuiteArg::Kms => Suite::Kms,
            SuiteArg::Numrange => Suite::Numrange,
            SuiteArg::All => Suite::All,
        }
    }
}
