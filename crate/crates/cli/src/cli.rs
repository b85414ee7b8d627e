//! Command-line arguments and their resolution against a config file.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::FileConfig;
use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "fracairy", version, about = "Potential-method solver for the time-fractional Airy equation")]
pub struct Cli {
    /// Cap on worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the verification report here.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Write the primary output (CSV) here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// TOML run configuration; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one problem and write the solution grid.
    Solve(SolveArgs),
    /// Run a verification battery and write a report.
    Verify(VerifyArgs),
    /// Evaluate a fundamental solution.
    #[command(subcommand)]
    Kernel(KernelCommand),
    /// Point evaluation of special functions.
    #[command(subcommand)]
    Specfun(SpecfunCommand),
}

#[derive(Debug, Args, Default)]
pub struct SolveArgs {
    /// Problem number: 1 on (0,1), 2 on (0,∞), 3 on (−∞,0).
    #[arg(long)]
    pub problem: Option<u32>,
    /// Fractional order, 0<alpha<1.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Boundary datum as NAME=PRESET or NAME=PATH.csv, e.g. psi1=poly:2.
    #[arg(long = "preset", value_name = "NAME=VALUE")]
    pub presets: Vec<String>,
    /// Forcing as SPACE*TIME terms joined by `;`, e.g. bump:0.5,0.25*const:1.
    #[arg(long)]
    pub forcing: Option<String>,
    /// Final time of the run.
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Uniform time steps on [0, t_max].
    #[arg(long)]
    pub n_steps: Option<usize>,
    /// Spatial cells of the output grid.
    #[arg(long)]
    pub cells: Option<usize>,
    /// Truncation length for problems 2 and 3.
    #[arg(long)]
    pub length: Option<f64>,
    /// Also write the densities as CSV.
    #[arg(long)]
    pub densities: Option<PathBuf>,
}

#[derive(Debug, Args, Default)]
pub struct VerifyArgs {
    /// lemmas, special, volterra, manufactured, boundary, energy, zero or all.
    #[arg(long)]
    pub battery: Option<String>,
    /// Fractional orders, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub alpha: Vec<f64>,
    /// Times for the kernel mass checks, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub t_list: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    G,
    V,
}

#[derive(Debug, Args, Clone)]
pub struct KernelArgs {
    #[arg(long, value_enum, default_value = "g")]
    pub branch: BranchArg,
    #[arg(long)]
    pub alpha: f64,
    /// Weight exponent; defaults to 2α/3.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Number of spatial derivatives.
    #[arg(long, default_value_t = 0)]
    pub dx: u32,
    /// Continue V to x < 0.
    #[arg(long)]
    pub extend_v: bool,
}

#[derive(Debug, Subcommand)]
pub enum KernelCommand {
    /// One value at (x, t).
    Eval {
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long)]
        t: f64,
    },
    /// Values on a uniform x grid for each listed t.
    Table {
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long, allow_hyphen_values = true, default_value_t = -2.0)]
        x_min: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 2.0)]
        x_max: f64,
        /// Number of x points.
        #[arg(long, default_value_t = 41)]
        nx: usize,
        /// Times, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0.25,1")]
        t: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    /// φ(ρ, μ; z).
    Wright,
    /// M_ν(z).
    MWright,
    /// F_ν(z).
    FWright,
    /// E_{α,β}(x), real argument.
    MittagLeffler,
    /// Γ(x), real argument.
    Gamma,
}

#[derive(Debug, Subcommand)]
pub enum SpecfunCommand {
    Eval {
        #[arg(long, value_enum)]
        function: Function,
        #[arg(long, allow_hyphen_values = true)]
        rho: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<f64>,
        #[arg(long)]
        nu: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        /// Real part of the argument.
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
        /// Imaginary part of the argument.
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        zi: f64,
    },
}

/// A solve with every value resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    pub problem: u32,
    pub alpha: f64,
    pub t_max: Option<f64>,
    pub n_steps: Option<usize>,
    pub cells: Option<usize>,
    pub length: Option<f64>,
    /// (name, preset or path), file values first, flags after.
    pub presets: Vec<(String, String)>,
    pub forcing: Option<String>,
    pub densities: Option<PathBuf>,
}

/// A verification run with every value resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub battery: String,
    pub alphas: Vec<f64>,
    pub t_list: Option<Vec<f64>>,
}

/// Default order for `verify` when none is given.
pub const DEFAULT_VERIFY_ALPHA: f64 = 0.5;

pub fn split_preset(text: &str) -> Result<(String, String)> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("preset `{text}` must have the form NAME=VALUE")))?;
    Ok((name.trim().to_string(), value.trim().to_string()))
}

pub fn resolve_solve(args: &SolveArgs, file: &FileConfig) -> Result<SolveConfig> {
    let run = &file.run;
    let problem = args.problem.or(run.problem).unwrap_or(1);
    let alpha = args
        .alpha
        .or(run.alpha)
        .ok_or_else(|| CliError::Config("alpha is required (--alpha or [run] alpha)".into()))?;
    let mut presets = file.presets(problem);
    for p in &args.presets {
        presets.push(split_preset(p)?);
    }
    Ok(SolveConfig {
        problem,
        alpha,
        t_max: args.t_max.or(run.t_max),
        n_steps: args.n_steps.or(run.n_steps),
        cells: args.cells.or(run.cells),
        length: args.length.or(run.length),
        presets,
        forcing: args.forcing.clone().or_else(|| run.forcing.clone()),
        densities: args.densities.clone().or_else(|| file.output.densities.clone()),
    })
}

pub fn resolve_verify(args: &VerifyArgs, file: &FileConfig) -> VerifyConfig {
    let v = &file.verify;
    let alphas = if !args.alpha.is_empty() {
        args.alpha.clone()
    } else if let Some(a) = &v.alphas {
        a.clone()
    } else if let Some(a) = file.run.alpha {
        vec![a]
    } else {
        vec![DEFAULT_VERIFY_ALPHA]
    };
    VerifyConfig {
        battery: args.battery.clone().or_else(|| v.battery.clone()).unwrap_or_else(|| "all".into()),
        alphas,
        t_list: if args.t_list.is_empty() { v.t_list.clone() } else { Some(args.t_list.clone()) },
    }
}
