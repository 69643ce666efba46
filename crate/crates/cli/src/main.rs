use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser)]
#[command(
    name = "factdisp",
    version,
    about = "Factorized dispersion relations of coupled Lagrangian systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a .lag file into its symbol matrix or dispersion polynomial.
    Lagrangian(LagrangianArgs),
    /// Trace dispersion branches of a built-in model over a k grid.
    Model(ModelArgs),
    /// Cross-point normal-form branches as CSV.
    Crosspoint(CrosspointArgs),
    /// Eigenfrequencies of the coupled oscillator pair over a p grid.
    Mech(MechArgs),
    /// Expand det(A + b B(b)) in powers of b.
    Expand(ExpandArgs),
    /// Run verification checks and print a pass/fail table.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Emit {
    Matrix,
    Dispersion,
}

#[derive(Args)]
pub struct LagrangianArgs {
    /// Path to a .lag file.
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    pub file: Option<PathBuf>,
    /// Use a bundled file instead (wave, kirchhoff, kirchhoff_null, wing, twt, mindlin, crosspoint).
    #[arg(long)]
    pub builtin: Option<String>,
    #[arg(long, value_enum, default_value = "dispersion")]
    pub emit: Emit,
    /// Override a declared parameter, `name=value`.
    #[arg(long = "set", value_name = "NAME=VALUE")]
    pub set: Vec<String>,
    /// Substitute parameter values; `--keep` names stay symbolic.
    #[arg(long)]
    pub numeric: bool,
    #[arg(long, requires = "numeric")]
    pub keep: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum ModelName {
    Twt,
    Wing,
    Mindlin,
    Kirchhoff,
}

#[derive(Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = -0.3, allow_negative_numbers = true)]
    pub k_min: f64,
    #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
    pub k_max: f64,
    #[arg(long, default_value_t = 601)]
    pub k_steps: usize,
    /// Zoom grid k in [-0.05, 0.05] with 501 points.
    #[arg(long, conflicts_with_all = ["k_min", "k_max", "k_steps"])]
    pub zoom: bool,
}

#[derive(Args)]
pub struct ModelArgs {
    #[arg(value_enum)]
    pub name: ModelName,
    /// Coupling value; repeatable.
    #[arg(long = "b", allow_negative_numbers = true)]
    pub b: Vec<String>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long = "set", value_name = "NAME=VALUE")]
    pub set: Vec<String>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct CrosspointArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub g1: f64,
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub g2: f64,
    /// Repeatable; defaults to 0.4, 2, 4.
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Vec<f64>,
    /// Repeatable; defaults to 1 and -1.
    #[arg(long, allow_negative_numbers = true)]
    pub ggamma: Vec<f64>,
    /// `lo:hi`.
    #[arg(long, default_value = "-3:3", allow_hyphen_values = true)]
    pub kappa_range: String,
    #[arg(long, default_value_t = 601)]
    pub kappa_steps: usize,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct MechArgs {
    /// Coupling value; repeatable. Defaults to 0, 0.2, 0.4, 0.6.
    #[arg(long = "b")]
    pub b: Vec<f64>,
    #[arg(long, default_value_t = -0.05, allow_negative_numbers = true)]
    pub p_min: f64,
    #[arg(long, default_value_t = 0.23, allow_negative_numbers = true)]
    pub p_max: f64,
    #[arg(long, default_value_t = 541)]
    pub p_steps: usize,
    /// Largest admissible |p|.
    #[arg(long, default_value = "23/100")]
    pub p_bound: String,
    /// Override m1, m2, kappa1, kappa2, kappa, alpha1 or alpha2.
    #[arg(long = "set", value_name = "NAME=VALUE")]
    pub set: Vec<String>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ExpandArgs {
    /// File holding the uncoupled matrix A.
    pub a: PathBuf,
    /// File holding B(b), the coupling divided by b.
    pub b: PathBuf,
    #[arg(long = "var", default_value = "b")]
    pub var: String,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// all, detexp, pipeline, mindlin, crosspoint or mech.
    #[arg(default_value = "all")]
    pub suite: String,
}

/// Bad invocation detected after argument parsing; exits with code 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(Usage(msg.into()))
}

/// Opens `path` or stdout.
pub fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot write {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Lagrangian(a) => commands::lagrangian(&a),
        Command::Model(a) => commands::model(&a),
        Command::Crosspoint(a) => commands::crosspoint(&a),
        Command::Mech(a) => commands::mech(&a),
        Command::Expand(a) => commands::expand(&a),
        Command::Verify(a) => commands::verify(&a),
    };
    match res {
        Ok(code) => code,
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
