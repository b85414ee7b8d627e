//! Execution of parsed command lines.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use fracairy_core::data::DataProfile;
use fracairy_core::fractional::TimeGrid;
use fracairy_core::kernels::Kernel;
use fracairy_core::potentials::{Forcing, KernelBank};
use fracairy_core::problems::{
    solve, ProblemId, ProblemSetup, SolutionField, SpaceGrid, DEFAULT_CELLS_BOUNDED, DEFAULT_CELLS_HALF_LINE,
    DEFAULT_LENGTH, DEFAULT_TIME_STEPS, DEFAULT_T_MAX,
};
use fracairy_core::special::{f_wright, gamma, m_wright, mittag_leffler, wright_phi, MLParams, WrightParams};
use fracairy_core::verification::{
    check_boundary_residuals, check_energy_inequality, VerificationReport, BOUNDARY_TOL, DEFAULT_T_LIST,
};
use fracairy_core::{Branch, Complex64, FractionalOrder, KernelSpec};

use crate::batteries::{self, Battery};
use crate::cli::{
    resolve_solve, resolve_verify, BranchArg, Cli, Command, Function, KernelArgs, KernelCommand, SolveConfig,
    SpecfunCommand, VerifyConfig,
};
use crate::config::FileConfig;
use crate::csvio::{read_profile_file, write_densities, write_kernel_table, write_solution};
use crate::error::{CliError, Result, EXIT_CHECKS_FAILED, EXIT_OK};
use crate::format::sig;
use crate::report;

/// Label used in messages for standard output.
const STDOUT: &str = "<stdout>";

/// A named preset, or the path of a two-column CSV.
pub fn resolve_profile(text: &str) -> Result<DataProfile> {
    let path = Path::new(text);
    if text.ends_with(".csv") || path.is_file() {
        return read_profile_file(path);
    }
    DataProfile::parse_preset(text).map_err(|e| CliError::Config(format!("{e} (and no file `{text}` exists)")))
}

/// `SPACE*TIME` terms joined by `;`.
pub fn parse_forcing(text: &str) -> Result<Forcing> {
    let mut forcing = Forcing::zero();
    for term in text.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let (space, time) = term
            .split_once('*')
            .ok_or_else(|| CliError::Config(format!("forcing term `{term}` must have the form SPACE*TIME")))?;
        forcing = forcing.with_term(resolve_profile(space.trim())?, resolve_profile(time.trim())?);
    }
    Ok(forcing)
}

pub fn build_setup(c: &SolveConfig) -> Result<ProblemSetup> {
    let alpha = FractionalOrder::new(c.alpha)?;
    let id = ProblemId::from_number(c.problem)?;
    let time = TimeGrid::new(c.t_max.unwrap_or(DEFAULT_T_MAX), c.n_steps.unwrap_or(DEFAULT_TIME_STEPS))?;
    let length = c.length.unwrap_or(DEFAULT_LENGTH);
    let space = match id {
        ProblemId::One => {
            if c.length.is_some() {
                return Err(CliError::Config("length applies to problems 2 and 3 only".into()));
            }
            SpaceGrid::new(0.0, 1.0, c.cells.unwrap_or(DEFAULT_CELLS_BOUNDED))?
        }
        ProblemId::Two => SpaceGrid::new(0.0, length, c.cells.unwrap_or(DEFAULT_CELLS_HALF_LINE))?,
        ProblemId::Three => SpaceGrid::new(-length, 0.0, c.cells.unwrap_or(DEFAULT_CELLS_HALF_LINE))?,
    };
    let mut setup = ProblemSetup::with_defaults(id, alpha).with_time(time).with_space(space);
    for (name, value) in &c.presets {
        setup = setup.with_boundary(name, resolve_profile(value)?)?;
    }
    if let Some(f) = &c.forcing {
        setup = setup.with_forcing(parse_forcing(f)?);
    }
    setup.validate()?;
    Ok(setup)
}

fn open(path: Option<&PathBuf>) -> Result<(Box<dyn Write>, PathBuf)> {
    match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| CliError::io(p, e))?;
            Ok((Box::new(BufWriter::new(f)), p.clone()))
        }
        None => Ok((Box::new(std::io::stdout().lock()), PathBuf::from(STDOUT))),
    }
}

fn set_threads(n: Option<usize>) -> Result<()> {
    if let Some(n) = n {
        if n == 0 {
            return Err(CliError::Config("--threads must be at least 1".into()));
        }
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Run a parsed command line and return the exit status.
pub fn run(cli: Cli) -> Result<i32> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    set_threads(cli.threads.or(file.output.threads))?;
    let out = cli.out.clone().or_else(|| file.output.out.clone());
    let report_path = cli.report.clone().or_else(|| file.output.report.clone());
    match &cli.command {
        Command::Solve(args) => run_solve(&resolve_solve(args, &file)?, out.as_ref(), report_path.as_ref()),
        Command::Verify(args) => run_verify(&resolve_verify(args, &file), report_path.as_ref().or(out.as_ref())),
        Command::Kernel(k) => run_kernel(k, out.as_ref()),
        Command::Specfun(s) => run_specfun(s, out.as_ref()),
    }
}

/// Solve, then write the grid and optionally the densities and a report of
/// the boundary residuals and, for zero boundary data, the energy estimate.
pub fn run_solve(c: &SolveConfig, out: Option<&PathBuf>, report_path: Option<&PathBuf>) -> Result<i32> {
    let setup = build_setup(c)?;
    let mut bank = KernelBank::new();
    let field = solve(&setup, &mut bank)?;
    let (w, path) = open(out)?;
    write_solution(w, &path, &field)?;
    if let Some(p) = &c.densities {
        let (w, path) = open(Some(p))?;
        write_densities(w, &path, &field)?;
    }
    let Some(rp) = report_path else {
        return Ok(EXIT_OK);
    };
    let rep = solve_report(&field, &setup, &mut bank)?;
    let text = report::render(&rep, &solve_context(c));
    let (w, path) = open(Some(rp))?;
    report::write(w, &path, &text)?;
    Ok(if rep.all_pass() { EXIT_OK } else { EXIT_CHECKS_FAILED })
}

fn solve_report(field: &SolutionField, setup: &ProblemSetup, bank: &mut KernelBank) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new();
    rep.records.extend(check_boundary_residuals(field, setup, bank, BOUNDARY_TOL)?);
    let zero_data = setup.boundary.iter().all(|d| d.is_zero());
    if zero_data && setup.problem != ProblemId::Three {
        rep.records.extend(check_energy_inequality(field, setup)?);
    }
    rep.notes.extend(field.provenance.notes.iter().cloned());
    Ok(rep)
}

fn solve_context(c: &SolveConfig) -> Vec<(&'static str, String)> {
    let presets: Vec<String> = c.presets.iter().map(|(k, v)| format!("{k}={v}")).collect();
    vec![
        ("command", "solve".into()),
        ("problem", c.problem.to_string()),
        ("alpha", c.alpha.to_string()),
        ("presets", presets.join(" ")),
        ("forcing", c.forcing.clone().unwrap_or_else(|| "zero".into())),
    ]
}

pub fn run_verify(c: &VerifyConfig, report_path: Option<&PathBuf>) -> Result<i32> {
    let battery: Battery = c.battery.parse().map_err(CliError::Config)?;
    let alphas = c.alphas.iter().map(|&a| FractionalOrder::new(a)).collect::<fracairy_core::Result<Vec<_>>>()?;
    let t_list = c.t_list.clone().unwrap_or_else(|| DEFAULT_T_LIST.to_vec());
    let rep = batteries::run(battery, &alphas, &t_list)?;
    let alpha_text: Vec<String> = c.alphas.iter().map(|a| a.to_string()).collect();
    let t_text: Vec<String> = t_list.iter().map(|t| t.to_string()).collect();
    let context = [
        ("command", "verify".to_string()),
        ("battery", battery.name().to_string()),
        ("alphas", alpha_text.join(",")),
        ("t_list", t_text.join(",")),
    ];
    let text = report::render(&rep, &context);
    let (w, path) = open(report_path)?;
    report::write(w, &path, &text)?;
    let failed = rep.failures().count();
    for r in rep.failures() {
        eprintln!("{}", report::summary_line(r));
    }
    eprintln!("{} checks, {failed} failed", rep.records.len());
    Ok(if failed == 0 { EXIT_OK } else { EXIT_CHECKS_FAILED })
}

fn kernel_of(k: &KernelArgs) -> Result<Kernel> {
    let alpha = FractionalOrder::new(k.alpha)?;
    let branch = match k.branch {
        BranchArg::G => Branch::G,
        BranchArg::V => Branch::V,
    };
    let mut spec = KernelSpec::new(branch, alpha, k.mu.unwrap_or(alpha.two_delta()), k.dx);
    if k.extend_v {
        spec = spec.with_extension();
    }
    Ok(Kernel::new(spec)?)
}

pub fn run_kernel(cmd: &KernelCommand, out: Option<&PathBuf>) -> Result<i32> {
    let rows = match cmd {
        KernelCommand::Eval { kernel, x, t } => {
            vec![[*x, *t, kernel_of(kernel)?.eval(*x, *t)?.value]]
        }
        KernelCommand::Table { kernel, x_min, x_max, nx, t } => {
            if *nx < 2 || !(x_max > x_min) {
                return Err(CliError::Config("kernel table needs nx ≥ 2 and x_max > x_min".into()));
            }
            let k = kernel_of(kernel)?;
            let mut rows = Vec::with_capacity(nx * t.len());
            for &tt in t {
                for j in 0..*nx {
                    let x = x_min + (x_max - x_min) * j as f64 / (*nx - 1) as f64;
                    rows.push([x, tt, k.eval(x, tt)?.value]);
                }
            }
            rows
        }
    };
    let (w, path) = open(out)?;
    write_kernel_table(w, &path, &rows)?;
    Ok(EXIT_OK)
}

fn required(v: Option<f64>, name: &str, f: Function) -> Result<f64> {
    v.ok_or_else(|| CliError::Config(format!("--{name} is required for {f:?}")))
}

pub fn run_specfun(cmd: &SpecfunCommand, out: Option<&PathBuf>) -> Result<i32> {
    let SpecfunCommand::Eval { function, rho, mu, nu, alpha, beta, z, zi } = cmd;
    let f = *function;
    let arg = Complex64::new(*z, *zi);
    let real_only = || {
        if *zi != 0.0 {
            Err(CliError::Config(format!("{f:?} takes a real argument")))
        } else {
            Ok(*z)
        }
    };
    let value = match f {
        Function::Wright => {
            let p = WrightParams::new(required(*rho, "rho", f)?, required(*mu, "mu", f)?)?;
            wright_phi(p, arg)?.value
        }
        Function::MWright => m_wright(required(*nu, "nu", f)?, arg)?.value,
        Function::FWright => f_wright(required(*nu, "nu", f)?, arg)?.value,
        Function::MittagLeffler => {
            let p = MLParams::new(required(*alpha, "alpha", f)?, beta.unwrap_or(1.0))?;
            Complex64::new(mittag_leffler(p, real_only()?)?, 0.0)
        }
        Function::Gamma => Complex64::new(gamma(real_only()?), 0.0),
    };
    let (mut w, path) = open(out)?;
    writeln!(w, "re,im\n{},{}", sig(value.re, 16), sig(value.im, 16)).map_err(|e| CliError::io(&path, e))?;
    w.flush().map_err(|e| CliError::io(&path, e))?;
    Ok(EXIT_OK)
}
