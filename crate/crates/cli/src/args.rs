use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "fredholm",
    version,
    about = "Multiplicity, parity and torsion invariants of matrix curves"
)]
pub struct Cli {
    /// Also write a structured JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Algebraic multiplicity χ of a curve at its base point.
    Chi {
        #[arg(long, value_name = "FILE")]
        curve: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Algebraic order κ: the pole order of the inverse at the base point.
    Kappa {
        #[arg(long, value_name = "FILE")]
        curve: PathBuf,
    },
    /// Classical multiplicity of μ as an eigenvalue of K, for a curve
    /// document holding `λI - K` expanded at `μ`.
    Classical {
        #[arg(long, value_name = "FILE")]
        curve: PathBuf,
    },
    /// Parity of a path or a loop.
    Parity {
        #[command(subcommand)]
        mode: ParityCommand,
    },
    /// Global torsion invariant Λ of one class, or of every class with `table`.
    Torsion {
        #[arg(value_enum)]
        mode: Option<TorsionMode>,
        #[command(flatten)]
        torus: TorusArgs,
        /// Values of the class on the generators, e.g. `-1,1`.
        #[arg(long, allow_hyphen_values = true)]
        signs: Option<String>,
        /// Tolerance for tagging a value with its closed form.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Plain or alternating theta sum of a circle factor.
    Theta {
        #[arg(long, value_enum, default_value_t = ThetaKind::Plain)]
        kind: ThetaKind,
        #[arg(long, default_value_t = 12)]
        cutoff: usize,
        /// Circle period; defaults to 2√π.
        #[arg(long)]
        period: Option<f64>,
    },
    /// Normalized heat-kernel weights of the deck classes.
    Weights {
        #[command(flatten)]
        torus: TorusArgs,
        #[arg(long, default_value_t = 2)]
        max_class: usize,
    },
    /// Orientability of a class, cross-checked against Λ.
    Orientable {
        #[command(flatten)]
        torus: TorusArgs,
        #[arg(long, allow_hyphen_values = true)]
        signs: String,
        /// Tolerance for `|Λ - 1|`.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    OrdDet,
    Schur,
    Laurent,
    Transversal,
    All,
}

#[derive(Debug, Subcommand)]
pub enum ParityCommand {
    /// Product of the endpoint determinant signs.
    Interval(PathArgs),
    /// Count of simple determinant roots inside the interval.
    Crossings(PathArgs),
    /// Sum of the multiplicities of the roots inside the interval.
    ChiSum(PathArgs),
    /// Parity of a closed loop.
    Loop {
        #[arg(long = "loop", value_name = "FILE")]
        loop_file: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct PathArgs {
    #[arg(long, value_name = "FILE")]
    pub curve: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
}

#[derive(Debug, Args)]
pub struct TorusArgs {
    /// Torus dimension.
    #[arg(long)]
    pub n: usize,
    /// Lattice shells summed on each side.
    #[arg(long, default_value_t = 12)]
    pub cutoff: usize,
    /// Circle period of each factor; defaults to 2√π.
    #[arg(long)]
    pub period: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TorsionMode {
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ThetaKind {
    Plain,
    Alternating,
}
