//! The three initial-boundary value problems with zero initial data:
//!
//! ```text
//! 1: (0, 1),   u(0,t) = φ₁,  u_x(0,t) = φ₂,  u(1,t) = φ₃
//! 2: (0, ∞),   u(0,t) = ψ₁,  u_x(0,t) = ψ₂
//! 3: (−∞, 0),  u_xx(0,t) = ψ
//! ```
//!
//! Each solution is a sum of boundary potentials with weight 2α/3 plus the
//! volume potential of the forcing. Problem 1 determines its densities from
//! a 3×3 Volterra system, Problems 2 and 3 in closed form.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::convolution::moment_config;
use crate::data::DataProfile;
use crate::error::{Error, Result};
use crate::exec::map_indices;
use crate::fractional::{SampledFunction, TimeGrid};
use crate::kernels::{Branch, FractionalOrder, KernelProfile, KernelSpec, PROFILE_CUTOFF};
use crate::special::rgamma;
use crate::potentials::{boundary_weights, Density, Forcing, KernelBank, VolumePotentialSpec, VolumeSlice};
use crate::volterra::{solve_march, VolterraSystem};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Which problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemId {
    One,
    Two,
    Three,
}

impl ProblemId {
    pub fn from_number(n: u32) -> Result<Self> {
        match n {
            1 => Ok(Self::One),
            2 => Ok(Self::Two),
            3 => Ok(Self::Three),
            _ => Err(Error::InvalidParameter(format!("problem must be 1, 2 or 3, got {n}"))),
        }
    }

    pub fn number(self) -> u32 {
        match self {
            Self::One => 1,
            Self::Two => 2,
            Self::Three => 3,
        }
    }

    /// Names of the boundary data, in order.
    pub fn boundary_names(self) -> &'static [&'static str] {
        match self {
            Self::One => &["phi1", "phi2", "phi3"],
            Self::Two => &["psi1", "psi2"],
            Self::Three => &["psi"],
        }
    }

    /// Names of the densities, in order.
    pub fn density_names(self) -> &'static [&'static str] {
        match self {
            Self::One => &["alpha", "beta", "gamma"],
            Self::Two => &["lambda", "mu"],
            Self::Three => &["theta"],
        }
    }
}

/// Uniform spatial grid of `cells + 1` points on [lower, upper].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceGrid {
    lower: f64,
    upper: f64,
    cells: usize,
}

impl SpaceGrid {
    pub fn new(lower: f64, upper: f64, cells: usize) -> Result<Self> {
        if !(upper > lower) || !lower.is_finite() || !upper.is_finite() {
            return Err(Error::InvalidParameter(format!("space grid [{lower}, {upper}] is empty or unbounded")));
        }
        if cells < 1 {
            return Err(Error::InvalidParameter("space grid needs at least one cell".into()));
        }
        Ok(Self { lower, upper, cells })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn step(&self) -> f64 {
        (self.upper - self.lower) / self.cells as f64
    }

    pub fn len(&self) -> usize {
        self.cells + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.cells)
            .map(|j| if j == self.cells { self.upper } else { self.lower + j as f64 * self.step() })
            .collect()
    }
}

/// Default time horizon.
pub const DEFAULT_T_MAX: f64 = 1.0;
/// Default number of time steps.
pub const DEFAULT_TIME_STEPS: usize = 256;
/// Default truncation length of the half-line problems.
pub const DEFAULT_LENGTH: f64 = 4.0;
/// Default spatial cells of Problem 1.
pub const DEFAULT_CELLS_BOUNDED: usize = 40;
/// Default spatial cells of Problems 2 and 3.
pub const DEFAULT_CELLS_HALF_LINE: usize = 80;
/// Largest |data(0)| accepted as zero.
pub const COMPATIBILITY_TOL: f64 = 1e-12;

/// Everything that defines one solve.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSetup {
    pub problem: ProblemId,
    pub alpha: FractionalOrder,
    pub time: TimeGrid,
    /// Output grid; for the half-line problems its far end is the
    /// truncation length, beyond which the forcing is taken as zero.
    pub space: SpaceGrid,
    pub boundary: Vec<DataProfile>,
    pub forcing: Forcing,
}

impl ProblemSetup {
    /// Zero data on the default grids.
    pub fn with_defaults(problem: ProblemId, alpha: FractionalOrder) -> Self {
        let time = TimeGrid::new(DEFAULT_T_MAX, DEFAULT_TIME_STEPS).expect("default time grid");
        let space = match problem {
            ProblemId::One => SpaceGrid::new(0.0, 1.0, DEFAULT_CELLS_BOUNDED),
            ProblemId::Two => SpaceGrid::new(0.0, DEFAULT_LENGTH, DEFAULT_CELLS_HALF_LINE),
            ProblemId::Three => SpaceGrid::new(-DEFAULT_LENGTH, 0.0, DEFAULT_CELLS_HALF_LINE),
        }
        .expect("default space grid");
        let boundary = vec![DataProfile::Zero; problem.boundary_names().len()];
        Self { problem, alpha, time, space, boundary, forcing: Forcing::zero() }
    }

    /// Set boundary datum `name` (e.g. `phi1`, `psi`).
    pub fn with_boundary(mut self, name: &str, data: DataProfile) -> Result<Self> {
        let idx = self
            .problem
            .boundary_names()
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| {
                Error::InvalidParameter(format!("problem {} has no boundary datum `{name}`", self.problem.number()))
            })?;
        self.boundary[idx] = data;
        Ok(self)
    }

    pub fn with_forcing(mut self, forcing: Forcing) -> Self {
        self.forcing = forcing;
        self
    }

    pub fn with_time(mut self, time: TimeGrid) -> Self {
        self.time = time;
        self
    }

    pub fn with_space(mut self, space: SpaceGrid) -> Self {
        self.space = space;
        self
    }

    /// Spatial support of the forcing integral.
    pub fn forcing_support(&self) -> (f64, f64) {
        match self.problem {
            ProblemId::One => (0.0, 1.0),
            ProblemId::Two => (0.0, self.space.upper()),
            ProblemId::Three => (self.space.lower(), 0.0),
        }
    }

    /// Check domain, data count and the compatibility data(0) = 0.
    pub fn validate(&self) -> Result<()> {
        let names = self.problem.boundary_names();
        if self.boundary.len() != names.len() {
            return Err(Error::InvalidParameter(format!(
                "problem {} takes {} boundary data, got {}",
                self.problem.number(),
                names.len(),
                self.boundary.len()
            )));
        }
        let s = self.space;
        let ok = match self.problem {
            ProblemId::One => s.lower() == 0.0 && s.upper() == 1.0,
            ProblemId::Two => s.lower() == 0.0,
            ProblemId::Three => s.upper() == 0.0,
        };
        if !ok {
            return Err(Error::InvalidParameter(format!(
                "space grid [{}, {}] does not fit problem {}",
                s.lower(),
                s.upper(),
                self.problem.number()
            )));
        }
        for (name, d) in names.iter().zip(&self.boundary) {
            let v = d.eval(0.0);
            if !(v.abs() <= COMPATIBILITY_TOL) {
                return Err(Error::IncompatibleData(format!("{name}(0) = {v}, but zero initial data needs {name}(0) = 0")));
            }
        }
        Ok(())
    }

    fn volume(&self) -> Result<Option<VolumePotentialSpec>> {
        if self.forcing.is_zero() {
            return Ok(None);
        }
        let (lo, hi) = self.forcing_support();
        Ok(Some(VolumePotentialSpec::new(self.alpha, lo, hi, self.forcing.clone())?))
    }
}

/// A density with its name.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedDensity {
    pub name: &'static str,
    pub density: Density,
}

/// Numerical settings a field was computed with.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub density_method: &'static str,
    pub volterra_residual: Option<f64>,
    pub moment_abs_tol: f64,
    pub moment_rel_tol: f64,
    pub profile_cutoff: f64,
    pub notes: Vec<String>,
}

/// u(x, t) on a rectangular grid with the densities that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionField {
    pub problem: ProblemId,
    pub alpha: FractionalOrder,
    pub x: Vec<f64>,
    pub time: TimeGrid,
    /// Row-major in t then x: `u[k * x.len() + j]` = u(x_j, t_k).
    pub u: Vec<f64>,
    pub densities: Vec<NamedDensity>,
    pub provenance: Provenance,
}

impl SolutionField {
    pub fn value(&self, k: usize, j: usize) -> f64 {
        self.u[k * self.x.len() + j]
    }

    /// u(·, t_k).
    pub fn row(&self, k: usize) -> &[f64] {
        let n = self.x.len();
        &self.u[k * n..(k + 1) * n]
    }

    /// u(x_j, ·).
    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.time.len()).map(|k| self.value(k, j)).collect()
    }

    pub fn density(&self, name: &str) -> Option<&Density> {
        self.densities.iter().find(|d| d.name == name).map(|d| &d.density)
    }

    pub fn sup_norm(&self) -> f64 {
        self.u.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// One boundary-potential term of an ansatz.
#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzTerm {
    pub branch: Branch,
    pub anchor: f64,
    pub density: Density,
}

/// A solution written as boundary potentials plus a volume potential, which
/// can be evaluated with any number of x-derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct Ansatz {
    pub alpha: FractionalOrder,
    pub time: TimeGrid,
    pub terms: Vec<AnsatzTerm>,
    pub volume: Option<VolumePotentialSpec>,
}

/// Kernel profiles needed to evaluate an ansatz with a given derivative count.
pub struct TraceKernels {
    boundary: Vec<Arc<KernelProfile>>,
    volume: Option<Arc<KernelProfile>>,
}

impl Ansatz {
    /// Profiles for `dx` x-derivatives.
    pub fn kernels(&self, bank: &mut KernelBank, dx: u32) -> Result<TraceKernels> {
        let mut specs: Vec<KernelSpec> =
            self.terms.iter().map(|t| KernelSpec::standard(t.branch, self.alpha, dx)).collect();
        let vspec = KernelSpec::standard(Branch::G, self.alpha, dx);
        if self.volume.is_some() {
            specs.push(vspec);
        }
        bank.prefetch(&specs)?;
        let boundary = self
            .terms
            .iter()
            .map(|t| bank.get(KernelSpec::standard(t.branch, self.alpha, dx)))
            .collect::<Result<Vec<_>>>()?;
        let volume = match self.volume {
            Some(_) => Some(bank.get(vspec)?),
            None => None,
        };
        Ok(TraceKernels { boundary, volume })
    }

    /// ∂ₓ^dx u(x, ·) at every time node.
    pub fn trace_with(&self, kernels: &TraceKernels, x: f64) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.time.len()];
        for (term, profile) in self.terms.iter().zip(&kernels.boundary) {
            if term.density.values().iter().all(|v| *v == 0.0) {
                continue;
            }
            let w = boundary_weights(profile, x - term.anchor, self.time)?;
            for (o, v) in out.iter_mut().zip(w.apply_all(term.density.values())) {
                *o += v;
            }
        }
        if let (Some(vol), Some(profile)) = (&self.volume, &kernels.volume) {
            let slice = VolumeSlice::new(profile, vol, x, self.time.t_max())?;
            for (o, v) in out.iter_mut().zip(slice.on_grid(self.time)?) {
                *o += v;
            }
        }
        Ok(out)
    }

    pub fn trace(&self, bank: &mut KernelBank, x: f64, dx: u32) -> Result<Vec<f64>> {
        let k = self.kernels(bank, dx)?;
        self.trace_with(&k, x)
    }

    /// u on `xs` × time nodes, row-major in t then x.
    pub fn field(&self, bank: &mut KernelBank, xs: &[f64]) -> Result<Vec<f64>> {
        let k = self.kernels(bank, 0)?;
        let columns = map_indices(xs.len(), |j| self.trace_with(&k, xs[j]))?;
        let nx = xs.len();
        let mut u = vec![0.0; nx * self.time.len()];
        for (j, col) in columns.iter().enumerate() {
            for (k, v) in col.iter().enumerate() {
                u[k * nx + j] = *v;
            }
        }
        Ok(u)
    }
}

/// Volume potential of `setup`'s forcing with kernel `spec`, at x, on the time grid.
fn volume_trace(bank: &mut KernelBank, setup: &ProblemSetup, spec: KernelSpec, x: f64) -> Result<Vec<f64>> {
    match setup.volume()? {
        None => Ok(vec![0.0; setup.time.len()]),
        Some(vol) => {
            let profile = bank.get(spec)?;
            VolumeSlice::new(&profile, &vol, x, setup.time.t_max())?.on_grid(setup.time)
        }
    }
}

fn caputo_minus(data: &DataProfile, nu: f64, grid: TimeGrid, volume: &[f64]) -> Vec<f64> {
    data.caputo_on(nu, grid).iter().zip(volume).map(|(d, v)| d - v).collect()
}

/// The ansatz of `setup` with the given densities.
pub fn ansatz(setup: &ProblemSetup, densities: &[Density]) -> Result<Ansatz> {
    let branches: &[(Branch, f64)] = match setup.problem {
        ProblemId::One => &[(Branch::G, 0.0), (Branch::V, 0.0), (Branch::G, 1.0)],
        ProblemId::Two => &[(Branch::G, 0.0), (Branch::V, 0.0)],
        ProblemId::Three => &[(Branch::G, 0.0)],
    };
    if densities.len() != branches.len() {
        return Err(Error::InvalidParameter(format!(
            "problem {} needs {} densities, got {}",
            setup.problem.number(),
            branches.len(),
            densities.len()
        )));
    }
    let terms = branches
        .iter()
        .zip(densities)
        .map(|(&(branch, anchor), d)| AnsatzTerm { branch, anchor, density: d.clone() })
        .collect();
    Ok(Ansatz { alpha: setup.alpha, time: setup.time, terms, volume: setup.volume()? })
}

/// The Volterra system for (α, β, γ) of Problem 1:
///
/// ```text
/// (1/3)α + (√3/6)β + K₁∗γ = D^{2α/3}(φ₁ − F(0,·))
/// (1/3)α − (√3/6)β + K₂∗γ = D^{α/3}(φ₂ − F_x(0,·))
/// K₃∗α + K₄∗β + (1/3)γ   = D^{2α/3}(φ₃ − F(1,·))
/// ```
///
/// with K₁ = G^0(−1,·), K₂ = ∂ₓG^{α/3}(−1,·), K₃ = G^0(1,·), K₄ = V^0(1,·).
/// Fractional derivatives of F are volume potentials with μ-shifted kernels.
pub fn problem1_system(setup: &ProblemSetup, bank: &mut KernelBank) -> Result<VolterraSystem> {
    setup.validate()?;
    if setup.problem != ProblemId::One {
        return Err(Error::InvalidParameter("not a problem 1 setup".into()));
    }
    let a = setup.alpha;
    let (d, d2) = (a.delta(), a.two_delta());
    let grid = setup.time;
    let g0 = KernelSpec::g(a, 0.0, 0);
    let g1 = KernelSpec::g(a, d, 1);
    let v0 = KernelSpec::v(a, 0.0, 0);
    bank.prefetch(&[g0, g1, v0])?;
    let r1 = caputo_minus(&setup.boundary[0], d2, grid, &volume_trace(bank, setup, g0, 0.0)?);
    let r2 = caputo_minus(&setup.boundary[1], d, grid, &volume_trace(bank, setup, g1, 0.0)?);
    let r3 = caputo_minus(&setup.boundary[2], d2, grid, &volume_trace(bank, setup, g0, 1.0)?);
    let c = SQRT3 / 6.0;
    let third = 1.0 / 3.0;
    let k1 = boundary_weights(&*bank.get(g0)?, -1.0, grid)?;
    let k2 = boundary_weights(&*bank.get(g1)?, -1.0, grid)?;
    let k3 = boundary_weights(&*bank.get(g0)?, 1.0, grid)?;
    let k4 = boundary_weights(&*bank.get(v0)?, 1.0, grid)?;
    VolterraSystem::new(grid, vec![r1, r2, r3])?
        .with_instantaneous(vec![third, c, 0.0, third, -c, 0.0, 0.0, 0.0, third])?
        .with_weights(0, 2, k1.scaled(-1.0))?
        .with_weights(1, 2, k2.scaled(-1.0))?
        .with_weights(2, 0, k3.scaled(-1.0))?
        .with_weights(2, 1, k4.scaled(-1.0))
}

/// The two closed-form right-hand sides of Problem 2,
/// A = D^{2α/3}(ψ₁ − Q(0,·)) and B = D^{α/3}(ψ₂ − Q_x(0,·)).
pub fn problem2_traces(setup: &ProblemSetup, bank: &mut KernelBank) -> Result<(Vec<f64>, Vec<f64>)> {
    let a = setup.alpha;
    let grid = setup.time;
    let g0 = KernelSpec::g(a, 0.0, 0);
    let g1 = KernelSpec::g(a, a.delta(), 1);
    bank.prefetch(&[g0, g1])?;
    let big_a = caputo_minus(&setup.boundary[0], a.two_delta(), grid, &volume_trace(bank, setup, g0, 0.0)?);
    let big_b = caputo_minus(&setup.boundary[1], a.delta(), grid, &volume_trace(bank, setup, g1, 0.0)?);
    Ok((big_a, big_b))
}

/// R_xx(0, ·) for Problem 3.
pub fn problem3_curvature(setup: &ProblemSetup, bank: &mut KernelBank) -> Result<Vec<f64>> {
    volume_trace(bank, setup, KernelSpec::standard(Branch::G, setup.alpha, 2), 0.0)
}

/// Alternative Problem 3 density (3/2)(R_xx(0,·) − ψ), kept for comparison
/// with the form that meets the boundary condition.
pub fn problem3_theta_variant(setup: &ProblemSetup, bank: &mut KernelBank) -> Result<Density> {
    let rxx = problem3_curvature(setup, bank)?;
    let values = setup.time.nodes().iter().zip(&rxx).map(|(&t, r)| 1.5 * (r - setup.boundary[0].eval(t))).collect();
    SampledFunction::new(setup.time, values)
}

fn provenance(method: &'static str, residual: Option<f64>) -> Provenance {
    let cfg = moment_config();
    Provenance {
        density_method: method,
        volterra_residual: residual,
        moment_abs_tol: cfg.abs_tol,
        moment_rel_tol: cfg.rel_tol,
        profile_cutoff: PROFILE_CUTOFF,
        notes: Vec::new(),
    }
}

fn finish(setup: &ProblemSetup, bank: &mut KernelBank, densities: Vec<Density>, prov: Provenance) -> Result<SolutionField> {
    let ans = ansatz(setup, &densities)?;
    let x = setup.space.nodes();
    let u = ans.field(bank, &x)?;
    let densities = setup
        .problem
        .density_names()
        .iter()
        .zip(densities)
        .map(|(&name, density)| NamedDensity { name, density })
        .collect();
    Ok(SolutionField { problem: setup.problem, alpha: setup.alpha, x, time: setup.time, u, densities, provenance: prov })
}

/// Problem 1 on (0, 1): densities from the Volterra system by time marching.
pub fn solve_problem1(setup: &ProblemSetup, bank: &mut KernelBank) -> Result<SolutionField> {
    let system = problem1_system(setup, bank)?;
    let sol = solve_march(&system)?;
    let densities = sol
        .values
        .into_iter()
        .map(|v| SampledFunction::new(setup.time, v))
        .collect::<Result<Vec<_>>>()?;
    finish(setup, bank, densities, provenance("volterra-march", Some(sol.residual_norm)))
}

/// Problem 2 on (0, ∞): λ = (3/2)(A + B), μ = √3(A − B).
pub fn solve_problem2(setup: &ProblemSetup, bank: &mut KernelBank) -> Result<SolutionField> {
    setup.validate()?;
    if setup.problem != ProblemId::Two {
        return Err(Error::InvalidParameter("not a problem 2 setup".into()));
    }
    let (a, b) = problem2_traces(setup, bank)?;
    let lambda = a.iter().zip(&b).map(|(x, y)| 1.5 * (x + y)).collect();
    let mu = a.iter().zip(&b).map(|(x, y)| SQRT3 * (x - y)).collect();
    let densities = vec![SampledFunction::new(setup.time, lambda)?, SampledFunction::new(setup.time, mu)?];
    finish(setup, bank, densities, provenance("closed-form", None))
}

/// Problem 3 on (−∞, 0): θ = 3(ψ − R_xx(0,·)).
pub fn solve_problem3(setup: &ProblemSetup, bank: &mut KernelBank) -> Result<SolutionField> {
    setup.validate()?;
    if setup.problem != ProblemId::Three {
        return Err(Error::InvalidParameter("not a problem 3 setup".into()));
    }
    let rxx = problem3_curvature(setup, bank)?;
    let theta = setup.time.nodes().iter().zip(&rxx).map(|(&t, r)| 3.0 * (setup.boundary[0].eval(t) - r)).collect();
    let densities = vec![SampledFunction::new(setup.time, theta)?];
    finish(setup, bank, densities, provenance("closed-form", None))
}

/// Problem 1 data generated by the densities (α, β, γ) = (0, 0, t):
/// φ₁ and φ₂ are the traces at x = 0 of ∫₀ᵗ G(x − 1, t − τ) τ dτ and of its
/// x-derivative, sampled on `time` (exact there because the density is
/// linear), and φ₃(t) = t^{1+2α/3}/(3Γ(2 + 2α/3)) in closed form.
pub fn manufactured_problem1(alpha: FractionalOrder, time: TimeGrid, bank: &mut KernelBank) -> Result<ProblemSetup> {
    let g0 = KernelSpec::standard(Branch::G, alpha, 0);
    let g1 = KernelSpec::standard(Branch::G, alpha, 1);
    bank.prefetch(&[g0, g1])?;
    let gamma: Vec<f64> = time.nodes();
    let phi1 = boundary_weights(&*bank.get(g0)?, -1.0, time)?.apply_all(&gamma);
    let phi2 = boundary_weights(&*bank.get(g1)?, -1.0, time)?.apply_all(&gamma);
    let e = 1.0 + alpha.two_delta();
    let phi3 = DataProfile::Power { coeff: rgamma(e + 1.0) / 3.0, exponent: e };
    ProblemSetup::with_defaults(ProblemId::One, alpha)
        .with_time(time)
        .with_boundary("phi1", DataProfile::sampled(0.0, time.t_max(), phi1)?)?
        .with_boundary("phi2", DataProfile::sampled(0.0, time.t_max(), phi2)?)?
        .with_boundary("phi3", phi3)
}

/// Dispatch on the problem id.
pub fn solve(setup: &ProblemSetup, bank: &mut KernelBank) -> Result<SolutionField> {
    match setup.problem {
        ProblemId::One => solve_problem1(setup, bank),
        ProblemId::Two => solve_problem2(setup, bank),
        ProblemId::Three => solve_problem3(setup, bank),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(a: f64) -> FractionalOrder {
        FractionalOrder::new(a).unwrap()
    }

    #[test]
    fn incompatible_data_is_rejected() {
        let s = ProblemSetup::with_defaults(ProblemId::Two, order(0.5))
            .with_boundary("psi1", DataProfile::Constant(1.0))
            .unwrap();
        assert!(matches!(s.validate(), Err(Error::IncompatibleData(_))));
        assert!(ProblemSetup::with_defaults(ProblemId::Three, order(0.5)).with_boundary("phi1", DataProfile::Zero).is_err());
    }

    #[test]
    fn zero_data_gives_zero_field() {
        let mut bank = KernelBank::new();
        let s = ProblemSetup::with_defaults(ProblemId::Three, order(0.5))
            .with_time(TimeGrid::new(1.0, 16).unwrap())
            .with_space(SpaceGrid::new(-1.0, 0.0, 4).unwrap());
        let f = solve(&s, &mut bank).unwrap();
        assert_eq!(f.sup_norm(), 0.0);
        assert_eq!(f.u.len(), 17 * 5);
    }
}
