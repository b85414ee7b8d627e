//! Named verification batteries, shared by `verify` and the acceptance tests.

use std::str::FromStr;

use fracairy_core::data::DataProfile;
use fracairy_core::potentials::{Forcing, KernelBank};
use fracairy_core::problems::{solve, ProblemId, ProblemSetup};
use fracairy_core::verification::{
    check_boundary_residuals, check_energy_inequality, check_jump_ladder, check_kernel_mass, check_kernel_pde,
    check_lemma_suite, check_log_moments, check_m_wright_relation, check_manufactured_density,
    check_volterra_benchmark, check_wright_cross, check_zero_solution, CheckRecord, VerificationReport, BOUNDARY_TOL,
};
use fracairy_core::{FractionalOrder, Result};

/// Tolerances of the individual batteries.
pub const WRIGHT_CROSS_TOL: f64 = 1e-9;
pub const M_WRIGHT_TOL: f64 = 1e-10;
pub const MASS_TOL: f64 = 1e-6;
pub const LOG_MOMENT_TOL: f64 = 1e-6;
pub const JUMP_TOL: f64 = 1e-3;
pub const JUMP_STEPS: usize = 512;
pub const VOLTERRA_STEPS: usize = 512;
pub const MANUFACTURED_TOL: f64 = 1e-3;
pub const MANUFACTURED_STEPS: usize = 128;
/// Orders of the kernel mass study.
pub const MASS_ALPHAS: [f64; 3] = [0.3, 0.5, 0.7];
/// Times of the kernel mass study.
pub const MASS_TIMES: [f64; 2] = [0.25, 1.0];
/// Orders of the energy study.
pub const ENERGY_ALPHAS: [f64; 3] = [0.3, 0.5, 0.7];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Battery {
    /// Kernel and potential identities.
    Lemmas,
    /// Wright function representations.
    Special,
    /// The exponential Volterra benchmark.
    Volterra,
    /// Density recovery for manufactured Problem 1 data.
    Manufactured,
    /// Boundary-condition residuals of all three problems.
    Boundary,
    /// The energy estimate for zero boundary data.
    Energy,
    /// Zero data gives a zero field.
    Zero,
    All,
}

impl Battery {
    pub const NAMES: [&'static str; 8] =
        ["lemmas", "special", "volterra", "manufactured", "boundary", "energy", "zero", "all"];

    pub fn name(self) -> &'static str {
        match self {
            Self::Lemmas => "lemmas",
            Self::Special => "special",
            Self::Volterra => "volterra",
            Self::Manufactured => "manufactured",
            Self::Boundary => "boundary",
            Self::Energy => "energy",
            Self::Zero => "zero",
            Self::All => "all",
        }
    }
}

impl FromStr for Battery {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "lemmas" => Self::Lemmas,
            "special" => Self::Special,
            "volterra" => Self::Volterra,
            "manufactured" => Self::Manufactured,
            "boundary" => Self::Boundary,
            "energy" => Self::Energy,
            "zero" => Self::Zero,
            "all" => Self::All,
            _ => return Err(format!("unknown battery `{s}`, expected one of {}", Self::NAMES.join(", "))),
        })
    }
}

fn report_of(records: Vec<CheckRecord>) -> VerificationReport {
    VerificationReport { records, notes: Vec::new() }
}

pub fn special() -> Result<VerificationReport> {
    Ok(report_of(vec![check_wright_cross(WRIGHT_CROSS_TOL)?, check_m_wright_relation(M_WRIGHT_TOL)?]))
}

pub fn volterra() -> Result<VerificationReport> {
    Ok(report_of(check_volterra_benchmark(VOLTERRA_STEPS)?))
}

pub fn manufactured(alphas: &[FractionalOrder]) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new();
    for &a in alphas {
        rep.records.extend(check_manufactured_density(a, MANUFACTURED_STEPS, MANUFACTURED_TOL)?);
    }
    Ok(rep)
}

/// Kernel mass at every (α, μ, t) with α in `alphas`, μ ∈ {2α/3, 1 − α/3} and
/// t in `times`.
pub fn kernel_mass(alphas: &[FractionalOrder], times: &[f64]) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new();
    for &a in alphas {
        for mu in [a.two_delta(), 1.0 - a.delta()] {
            for &t in times {
                rep.push(check_kernel_mass(a, mu, t, MASS_TOL)?);
            }
        }
    }
    Ok(rep)
}

pub fn log_moments(alphas: &[FractionalOrder]) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new();
    for &a in alphas {
        rep.records.extend(check_log_moments(a, LOG_MOMENT_TOL)?);
    }
    Ok(rep)
}

pub fn jump_ladders(alphas: &[FractionalOrder]) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new();
    for &a in alphas {
        rep.records.extend(check_jump_ladder(a, JUMP_STEPS, JUMP_TOL)?);
    }
    Ok(rep)
}

pub fn kernel_pde(alphas: &[FractionalOrder]) -> Result<VerificationReport> {
    Ok(report_of(alphas.iter().map(|&a| check_kernel_pde(a)).collect::<Result<_>>()?))
}

/// Smooth data for each problem on the default grids.
pub fn boundary_setups(alpha: FractionalOrder) -> Result<Vec<ProblemSetup>> {
    let p = DataProfile::parse_preset;
    Ok(vec![
        ProblemSetup::with_defaults(ProblemId::One, alpha)
            .with_boundary("phi1", p("poly:2")?)?
            .with_boundary("phi3", p("sin")?)?
            .with_forcing(Forcing::separable(p("bump:0.5,0.25")?, p("const:1")?)),
        ProblemSetup::with_defaults(ProblemId::Two, alpha)
            .with_boundary("psi1", p("poly:2")?)?
            .with_boundary("psi2", p("sin:1")?)?,
        ProblemSetup::with_defaults(ProblemId::Three, alpha)
            .with_boundary("psi", p("poly:1")?)?
            .with_forcing(Forcing::separable(p("bump:-1,0.5")?, p("sin:3")?)),
    ])
}

pub fn boundary(alphas: &[FractionalOrder]) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new();
    for &a in alphas {
        for setup in boundary_setups(a)? {
            let mut bank = KernelBank::new();
            let field = solve(&setup, &mut bank)?;
            rep.records.extend(check_boundary_residuals(&field, &setup, &mut bank, BOUNDARY_TOL)?);
        }
    }
    Ok(rep)
}

/// The three forcing presets of the energy study, as (space, time) factors.
pub fn energy_forcings() -> Result<Vec<Forcing>> {
    let p = DataProfile::parse_preset;
    Ok(vec![
        Forcing::separable(p("bump:0.5,0.25")?, p("const:1")?),
        Forcing::separable(p("sin")?, p("poly:1")?),
        Forcing::separable(p("poly:2")?, p("sin:2")?),
    ])
}

pub fn energy(alphas: &[FractionalOrder]) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new();
    for &a in alphas {
        for (k, forcing) in energy_forcings()?.into_iter().enumerate() {
            let setup = ProblemSetup::with_defaults(ProblemId::One, a).with_forcing(forcing);
            let mut bank = KernelBank::new();
            let field = solve(&setup, &mut bank)?;
            for mut r in check_energy_inequality(&field, &setup)? {
                r.id = format!("{}.forcing{}", r.id, k + 1);
                rep.push(r);
            }
        }
    }
    Ok(rep)
}

pub fn zero(alphas: &[FractionalOrder]) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new();
    for &a in alphas {
        for id in [ProblemId::One, ProblemId::Two, ProblemId::Three] {
            let setup = ProblemSetup::with_defaults(id, a);
            let mut bank = KernelBank::new();
            let mut r = check_zero_solution(&solve(&setup, &mut bank)?);
            r.id = format!("{}.alpha={}", r.id, a.alpha());
            rep.push(r);
        }
    }
    Ok(rep)
}

/// Run one battery at the given orders; `t_list` feeds the lemma suite.
pub fn run(battery: Battery, alphas: &[FractionalOrder], t_list: &[f64]) -> Result<VerificationReport> {
    match battery {
        Battery::Lemmas => check_lemma_suite(alphas, t_list),
        Battery::Special => special(),
        Battery::Volterra => volterra(),
        Battery::Manufactured => manufactured(alphas),
        Battery::Boundary => boundary(alphas),
        Battery::Energy => energy(alphas),
        Battery::Zero => zero(alphas),
        Battery::All => {
            let mut rep = VerificationReport::new();
            for b in [
                Battery::Special,
                Battery::Volterra,
                Battery::Lemmas,
                Battery::Manufactured,
                Battery::Boundary,
                Battery::Energy,
                Battery::Zero,
            ] {
                rep.extend(run(b, alphas, t_list)?);
            }
            Ok(rep)
        }
    }
}
