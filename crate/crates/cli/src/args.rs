use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "iso", version, about = "Isoperimetric deficit and asymmetry toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate or emit shape files
    #[command(subcommand)]
    Shape(ShapeCmd),
    /// Sweeps over the explicit families
    #[command(subcommand)]
    Family(FamilyCmd),
    /// The linearized problem near the disk
    #[command(subcommand)]
    Opepl(OpeplCmd),
    /// Barrier lower bound on the linearized minimum
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Optimal stadium equations
    #[command(subcommand)]
    Stadium(StadiumCmd),
    /// Curvature optimality condition
    #[command(subcommand)]
    Optimality(OptimalityCmd),
    /// Invariant suite
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Subcommand)]
pub enum ShapeCmd {
    /// Print the functionals of a shape file as a CSV header and row
    Eval {
        file: PathBuf,
        /// Print the report as JSON instead
        #[arg(long)]
        json: bool,
    },
    /// Write a shape file for a member of a family
    Emit {
        #[arg(value_enum)]
        kind: EmitKind,
        /// θ for a stadium, n for the counterexample, ε for near-sphere
        #[arg(long)]
        param: Option<f64>,
        /// Output path (standard output when absent)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also draw the shape
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EmitKind {
    Disk,
    Stadium,
    Dumbbell,
    Counterexample,
    NearSphere,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Stadium,
    Counterexample,
    NearSphere,
}

#[derive(Debug, Subcommand)]
pub enum FamilyCmd {
    /// Tabulate δ, λ₀ and δ/λ₀² over a parameter range
    Scan {
        #[arg(value_enum)]
        family: FamilyKind,
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
        #[arg(long)]
        steps: usize,
        /// CSV path (standard output when absent)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Plot of the ratio against the parameter
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// The two-disk dumbbell
    Dumbbell,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Fourier,
    Fixedpoint,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum OpeplCmd {
    /// Minimize the linearized quotient
    Solve(SolveArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum, default_value = "both")]
    pub method: MethodArg,
    #[arg(long, default_value_t = 64)]
    pub harmonics: usize,
    #[arg(long, default_value_t = 4096)]
    pub grid: usize,
    #[arg(long, default_value_t = 32)]
    pub restarts: usize,
    #[arg(long)]
    pub seed: u64,
    /// CSV of θ and u₀ for each solver
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Plot of u₀
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RepairArg {
    /// Continuous fifth piece
    Continuous,
    /// Fifth coefficient as printed
    Literal,
}

#[derive(Debug, Subcommand)]
pub enum BoundCmd {
    /// Lower bound on m from the barrier
    MLower {
        #[arg(long, value_enum, default_value = "continuous")]
        repair: RepairArg,
        /// CSV of x, H, M, M* on a uniform grid
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum StadiumCmd {
    /// Roots of the two stadium equations
    Roots,
}

#[derive(Debug, Subcommand)]
pub enum OptimalityCmd {
    /// Curvature residual on a convex shape file
    Residual {
        file: PathBuf,
        /// CSV of the residual samples
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Run every check; exit code 2 when one fails
    All {
        #[arg(long)]
        seed: u64,
        /// Random shapes in the inequality chain
        #[arg(long, default_value_t = 200)]
        shapes: usize,
    },
}
