//! A-posteriori checks: discrete PDE residuals, boundary residuals, the
//! energy inequality, and a battery of kernel and potential identities.
//!
//! Every check produces a [`CheckRecord`] holding the measured value, the
//! expected value, a tolerance, the comparison used and the grid it ran on.
//! Residual sup-norms skip the corner t < 0.05·T, where both the L1 scheme
//! and the potentials lose accuracy.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::data::DataProfile;
use crate::error::{Error, Result};
use crate::exec::map_indices;
use crate::fractional::{l1_caputo, rl_product_trapezoid, SampledFunction, TimeGrid};
use crate::kernels::{kernel_mass, truncation_radius, Branch, FractionalOrder, Kernel, KernelProfile, KernelSpec};
use crate::potentials::{
    boundary_potential_with, initial_potential_with, jump_limit, wright_log_moment, BoundaryPotentialSpec, Forcing,
    InitialPotentialSpec, KernelBank, LogMoment, Side, VolumePotentialSpec, VolumeSlice,
};
use crate::problems::{
    ansatz, manufactured_problem1, problem3_theta_variant, solve_problem1, ProblemId, ProblemSetup, SolutionField,
};
use crate::quad::{integrate_scalar, QuadConfig};
use crate::special::{f_wright, gamma, m_wright, mittag_leffler, wright_phi, wright_phi_hankel, MLParams, WrightParams};
use crate::convolution::KernelShape;
use crate::volterra::{solve_march, solve_picard, VolterraSystem};
use num_complex::Complex64;

/// Residual sup-norms ignore t < T_CUT_FRACTION·T.
pub const T_CUT_FRACTION: f64 = 0.05;
/// Boundary conditions are checked for t ≥ this.
pub const BOUNDARY_T_MIN: f64 = 0.1;
/// Default boundary-residual tolerance.
pub const BOUNDARY_TOL: f64 = 1e-3;
/// Distance from x = 0 at which one-sided second derivatives are sampled.
pub const ONE_SIDED_EPS: f64 = 1e-4;
/// (time steps, x step) of the three levels of the kernel PDE study.
pub const KERNEL_PDE_LEVELS: [(usize, f64); 3] = [(5120, 0.02), (10240, 0.01), (20480, 0.005)];
/// Minimum residual reduction per refinement in the kernel PDE study.
pub const KERNEL_PDE_MIN_RATIO: f64 = 1.7;
/// Probe points of the kernel PDE study.
pub const KERNEL_PDE_POINTS: [f64; 4] = [-1.0, -0.5, 0.5, 1.0];
/// Relative slack of the pointwise energy inequality.
pub const ENERGY_SLACK: f64 = 1e-6;

/// How a measured value is compared with the expected one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// |measured − expected| ≤ tol.
    Close,
    /// measured ≤ expected + tol.
    AtMost,
    /// measured ≥ expected − tol.
    AtLeast,
}

impl Relation {
    pub fn holds(self, measured: f64, expected: f64, tol: f64) -> bool {
        match self {
            Self::Close => (measured - expected).abs() <= tol,
            Self::AtMost => measured <= expected + tol,
            Self::AtLeast => measured >= expected - tol,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Close => "close",
            Self::AtMost => "at-most",
            Self::AtLeast => "at-least",
        }
    }
}

/// One check result.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub id: String,
    pub measured: f64,
    pub expected: f64,
    pub tol: f64,
    pub relation: Relation,
    pub pass: bool,
    /// Grid and discretization parameters needed to reproduce the value.
    pub grid: String,
    /// The identity or property being checked.
    pub provenance: String,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, relation: Relation, measured: f64, expected: f64, tol: f64) -> Self {
        let pass = relation.holds(measured, expected, tol);
        Self {
            id: id.into(),
            measured,
            expected,
            tol,
            relation,
            pass,
            grid: String::new(),
            provenance: String::new(),
        }
    }

    pub fn close(id: impl Into<String>, measured: f64, expected: f64, tol: f64) -> Self {
        Self::new(id, Relation::Close, measured, expected, tol)
    }

    pub fn at_most(id: impl Into<String>, measured: f64, bound: f64, tol: f64) -> Self {
        Self::new(id, Relation::AtMost, measured, bound, tol)
    }

    pub fn at_least(id: impl Into<String>, measured: f64, bound: f64, tol: f64) -> Self {
        Self::new(id, Relation::AtLeast, measured, bound, tol)
    }

    /// A rejected input: recorded as a failed check instead of aborting.
    pub fn rejected(id: impl Into<String>, value: f64, reason: &str) -> Self {
        let mut r = Self::close(id, value, f64::NAN, 0.0);
        r.provenance = format!("rejected input: {reason}");
        r
    }

    pub fn with_grid(mut self, grid: impl Into<String>) -> Self {
        self.grid = grid.into();
        self
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }
}

/// An ordered collection of check records plus free-form notes.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
        self.notes.extend(other.notes);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    /// Add a record that fails unless every tag in `required` appears as the
    /// provenance of some record.
    pub fn assert_coverage(&mut self, required: &[&str]) {
        let missing: Vec<&str> =
            required.iter().copied().filter(|tag| !self.records.iter().any(|r| r.provenance == *tag)).collect();
        let covered = (required.len() - missing.len()) as f64;
        let mut rec = CheckRecord::close("coverage", covered, required.len() as f64, 0.0).with_provenance("coverage");
        if !missing.is_empty() {
            rec.grid = format!("missing: {}", missing.join(", "));
        }
        self.push(rec);
    }
}

/// Identity tags the lemma battery must cover.
pub const LEMMA_COVERAGE: [&str; 7] = [
    "mass-identity",
    "jump-relation",
    "log-moment",
    "initial-limit",
    "approximate-identity",
    "homogeneous-equation",
    "volume-equation",
];

/// Sup-norm of L1-Caputo(u) − D³ₓu − f over interior nodes of a field on a
/// uniform x grid, with t ≥ t_cut. The five-point third difference needs two
/// nodes on each side, so at least five x nodes are required.
pub fn grid_residual<F>(x: &[f64], time: TimeGrid, u: &[f64], alpha: f64, f: F) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    let nx = x.len();
    if nx < 5 {
        return Err(Error::GridTooCoarse(format!("third difference needs 5 x nodes, got {nx}")));
    }
    if u.len() != nx * time.len() {
        return Err(Error::InvalidParameter("field size does not match its grids".into()));
    }
    let h = x[1] - x[0];
    let t_cut = T_CUT_FRACTION * time.t_max();
    let nodes = time.nodes();
    let mut worst: f64 = 0.0;
    for j in 2..nx - 2 {
        let column: Vec<f64> = (0..time.len()).map(|k| u[k * nx + j]).collect();
        let dt = l1_caputo(&column, time.step(), alpha);
        for (k, &t) in nodes.iter().enumerate() {
            if t < t_cut - 1e-12 {
                continue;
            }
            let row = &u[k * nx..(k + 1) * nx];
            let d3 = (row[j + 2] - 2.0 * row[j + 1] + 2.0 * row[j - 1] - row[j - 2]) / (2.0 * h * h * h);
            worst = worst.max((dt[k] - d3 - f(x[j], t)).abs());
        }
    }
    Ok(worst)
}

fn field_grid(field: &SolutionField) -> String {
    format!(
        "nx={} x=[{},{}] n_steps={} T={}",
        field.x.len(),
        field.x.first().copied().unwrap_or(0.0),
        field.x.last().copied().unwrap_or(0.0),
        field.time.n_steps(),
        field.time.t_max()
    )
}

/// Interior PDE residual of a solved field against its forcing.
pub fn check_pde_residual(field: &SolutionField, setup: &ProblemSetup, tol: f64) -> Result<CheckRecord> {
    let r = grid_residual(&field.x, field.time, &field.u, field.alpha.alpha(), |x, t| setup.forcing.eval(x, t))?;
    Ok(CheckRecord::at_most(format!("pde_residual.problem{}", field.problem.number()), r, 0.0, tol)
        .with_grid(format!("{} t_cut={}T", field_grid(field), T_CUT_FRACTION))
        .with_provenance("field-equation"))
}

/// Worst ratio of consecutive residuals of a refinement study.
pub fn check_refinement(id: impl Into<String>, residuals: &[f64], min_ratio: f64) -> CheckRecord {
    let ratio = residuals.windows(2).map(|w| w[0] / w[1]).fold(f64::INFINITY, f64::min);
    let ratio = if ratio.is_finite() { ratio } else { f64::NAN };
    let list: Vec<String> = residuals.iter().map(|r| format!("{r:.3e}")).collect();
    CheckRecord::at_least(id, ratio, min_ratio, 0.0).with_grid(format!("residuals={}", list.join("/")))
}

/// Residual of the manufactured solution u = t²·sin(x) on [0, 1], whose
/// forcing is 2t^{2−α}sin(x)/Γ(3−α) + t²cos(x).
pub fn check_manufactured_residual(alpha: FractionalOrder, n_steps: usize, cells: usize) -> Result<CheckRecord> {
    let time = TimeGrid::new(1.0, n_steps)?;
    let x: Vec<f64> = (0..=cells).map(|j| j as f64 / cells as f64).collect();
    let nodes = time.nodes();
    let mut u = Vec::with_capacity(x.len() * nodes.len());
    for &t in &nodes {
        u.extend(x.iter().map(|&xx| t * t * xx.sin()));
    }
    let a = alpha.alpha();
    let c = gamma(3.0) / gamma(3.0 - a);
    let forcing = Forcing::separable(DataProfile::Sine { freq: 1.0 }, DataProfile::Power { coeff: c, exponent: 2.0 - a })
        .with_term(
            DataProfile::Cosine { freq: 1.0 },
            DataProfile::Power { coeff: 1.0, exponent: 2.0 },
        );
    let r = grid_residual(&x, time, &u, a, |xx, t| forcing.eval(xx, t))?;
    Ok(CheckRecord::at_most(format!("manufactured_residual.alpha={a}"), r, 0.0, 5e-3)
        .with_grid(format!("nx={} n_steps={n_steps} T=1 t_cut={}T", x.len(), T_CUT_FRACTION))
        .with_provenance("field-equation"))
}

/// Residual of ∂ₜᵅG − ∂ₓ³G for G = G^{2α/3} at the probe points, by the L1
/// scheme on `n_steps` steps over [0, 1] and a five-point third difference
/// of step `h`, using the exact kernel evaluator.
pub fn kernel_pde_residual(alpha: FractionalOrder, n_steps: usize, h: f64) -> Result<f64> {
    let kernel = Kernel::new(KernelSpec::standard(Branch::G, alpha, 0))?;
    let grid = TimeGrid::new(1.0, n_steps)?;
    let nodes = grid.nodes();
    let t_cut = BOUNDARY_T_MIN;
    let eval = |x: f64, t: f64| -> Result<f64> {
        if t == 0.0 {
            Ok(0.0)
        } else {
            Ok(kernel.eval(x, t)?.value)
        }
    };
    let per_point = map_indices(KERNEL_PDE_POINTS.len(), |i| {
        let x = KERNEL_PDE_POINTS[i];
        let column = nodes.iter().map(|&t| eval(x, t)).collect::<Result<Vec<_>>>()?;
        let dt = l1_caputo(&column, grid.step(), alpha.alpha());
        let mut worst: f64 = 0.0;
        for (k, &t) in nodes.iter().enumerate() {
            if t < t_cut - 1e-12 {
                continue;
            }
            let d3 = (eval(x + 2.0 * h, t)? - 2.0 * eval(x + h, t)? + 2.0 * eval(x - h, t)? - eval(x - 2.0 * h, t)?)
                / (2.0 * h * h * h);
            worst = worst.max((dt[k] - d3).abs());
        }
        Ok(worst)
    })?;
    Ok(per_point.into_iter().fold(0.0, f64::max))
}

/// Three-level refinement study of the kernel PDE residual.
pub fn check_kernel_pde(alpha: FractionalOrder) -> Result<CheckRecord> {
    let residuals = KERNEL_PDE_LEVELS
        .iter()
        .map(|&(n, h)| kernel_pde_residual(alpha, n, h))
        .collect::<Result<Vec<_>>>()?;
    let levels: Vec<String> = KERNEL_PDE_LEVELS.iter().map(|(n, h)| format!("n={n},h={h}")).collect();
    let mut rec = check_refinement(format!("kernel_pde.ratio.alpha={}", alpha.alpha()), &residuals, KERNEL_PDE_MIN_RATIO)
        .with_provenance("homogeneous-equation");
    rec.grid = format!("{} levels={} x=±0.5,±1 t>={}", rec.grid, levels.join(";"), BOUNDARY_T_MIN);
    Ok(rec)
}

fn trapezoid(x: &[f64], v: &[f64]) -> f64 {
    x.windows(2).zip(v.windows(2)).map(|(xs, vs)| 0.5 * (xs[1] - xs[0]) * (vs[0] + vs[1])).sum()
}

/// The energy estimate with zero data, ‖u‖²(t) ≤ (Γ(α)/4)·E_{α,α}(4tᵅ)·Jᵅ‖f‖²(t),
/// and the pointwise inequality D^α‖u‖² ≤ 2∫u·D^αu dx, both on the grid.
/// Norms are trapezoid sums over the field's x nodes. The first record
/// measures the worst ratio of left to right side, the second the worst
/// excess of the pointwise inequality relative to its scale.
pub fn check_energy_inequality(field: &SolutionField, setup: &ProblemSetup) -> Result<Vec<CheckRecord>> {
    if !matches!(setup.problem, ProblemId::One | ProblemId::Two) {
        return Err(Error::InvalidParameter("the energy estimate covers problems 1 and 2".into()));
    }
    if setup.boundary.iter().any(|d| !d.is_zero()) {
        return Err(Error::InvalidParameter("the energy estimate needs zero boundary data".into()));
    }
    let a = field.alpha.alpha();
    let time = field.time;
    let nodes = time.nodes();
    let nx = field.x.len();
    let u_norm: Vec<f64> = (0..time.len())
        .map(|k| {
            let sq: Vec<f64> = field.row(k).iter().map(|v| v * v).collect();
            trapezoid(&field.x, &sq)
        })
        .collect();
    let f_norm: Vec<f64> = nodes
        .iter()
        .map(|&t| {
            let sq: Vec<f64> = field.x.iter().map(|&x| setup.forcing.eval(x, t).powi(2)).collect();
            trapezoid(&field.x, &sq)
        })
        .collect();
    let jf = rl_product_trapezoid(&f_norm, time.step(), a);
    let ml = MLParams::new(a, a)?;
    let c = gamma(a) / 4.0;
    // worst ratio of the two sides over nodes with a nonzero bound
    let mut ratio: f64 = 0.0;
    for (k, &t) in nodes.iter().enumerate().skip(1) {
        let bound = c * mittag_leffler(ml, 4.0 * t.powf(a))? * jf[k];
        if bound > 0.0 {
            ratio = ratio.max(u_norm[k] / bound);
        } else if u_norm[k] > 0.0 {
            ratio = f64::INFINITY;
        }
    }
    let grid = field_grid(field);
    let id = format!("energy.problem{}.alpha={a}", field.problem.number());
    let gronwall = CheckRecord::at_most(format!("{id}.estimate"), ratio, 1.0, 0.0)
        .with_grid(grid.clone())
        .with_provenance("energy-estimate");

    let d_norm = l1_caputo(&u_norm, time.step(), a);
    let mut du = vec![0.0; nx * time.len()];
    for j in 0..nx {
        let col = field.column(j);
        for (k, v) in l1_caputo(&col, time.step(), a).into_iter().enumerate() {
            du[k * nx + j] = v;
        }
    }
    let mut worst = f64::NEG_INFINITY;
    let mut scale: f64 = 0.0;
    for k in 1..time.len() {
        let prod: Vec<f64> = (0..nx).map(|j| 2.0 * field.u[k * nx + j] * du[k * nx + j]).collect();
        let rhs = trapezoid(&field.x, &prod);
        worst = worst.max(d_norm[k] - rhs);
        scale = scale.max(d_norm[k].abs()).max(rhs.abs());
    }
    let normalized = if scale > 0.0 { worst / scale } else { worst };
    let pointwise = CheckRecord::at_most(format!("{id}.pointwise"), normalized, 0.0, ENERGY_SLACK)
        .with_grid(format!("{grid} scale={scale:.3e}"))
        .with_provenance("energy-inequality");
    Ok(vec![gronwall, pointwise])
}

fn sup_after(time: TimeGrid, t_min: f64, a: &[f64], b: impl Fn(f64) -> f64) -> f64 {
    time.nodes()
        .iter()
        .zip(a)
        .filter(|(t, _)| **t >= t_min - 1e-12)
        .map(|(t, v)| (v - b(*t)).abs())
        .fold(0.0, f64::max)
}

/// Boundary-condition residuals of a solved field for t ≥ 0.1. For
/// Problem 3 the one-sided u_xx is sampled at x = −ε, and the residual of
/// the alternative density (3/2)(R_xx − ψ) is reported as a check that it
/// misses the condition.
pub fn check_boundary_residuals(
    field: &SolutionField,
    setup: &ProblemSetup,
    bank: &mut KernelBank,
    tol: f64,
) -> Result<Vec<CheckRecord>> {
    let densities: Vec<SampledFunction> = field.densities.iter().map(|d| d.density.clone()).collect();
    let ans = ansatz(setup, &densities)?;
    let time = field.time;
    let p = field.problem.number();
    let grid = field_grid(field);
    let bd = |i: usize| setup.boundary[i].clone();
    let mut out = Vec::new();
    let mut push = |name: &str, value: f64, provenance: &str| {
        out.push(
            CheckRecord::at_most(format!("boundary.problem{p}.{name}"), value, 0.0, tol)
                .with_grid(format!("{grid} t>={BOUNDARY_T_MIN}"))
                .with_provenance(provenance),
        );
    };
    match field.problem {
        ProblemId::One => {
            let d0 = bd(0);
            let d1 = bd(1);
            let d2 = bd(2);
            push("phi1", sup_after(time, BOUNDARY_T_MIN, &field.column(0), |t| d0.eval(t)), "boundary-condition");
            let ux = ans.trace(bank, 0.0, 1)?;
            push("phi2", sup_after(time, BOUNDARY_T_MIN, &ux, |t| d1.eval(t)), "boundary-condition");
            let last = field.x.len() - 1;
            push("phi3", sup_after(time, BOUNDARY_T_MIN, &field.column(last), |t| d2.eval(t)), "boundary-condition");
        }
        ProblemId::Two => {
            let d0 = bd(0);
            let d1 = bd(1);
            push("psi1", sup_after(time, BOUNDARY_T_MIN, &field.column(0), |t| d0.eval(t)), "boundary-condition");
            let ux = ans.trace(bank, 0.0, 1)?;
            push("psi2", sup_after(time, BOUNDARY_T_MIN, &ux, |t| d1.eval(t)), "boundary-condition");
        }
        ProblemId::Three => {
            let d0 = bd(0);
            let uxx = ans.trace(bank, -ONE_SIDED_EPS, 2)?;
            push("psi", sup_after(time, BOUNDARY_T_MIN, &uxx, |t| d0.eval(t)), "boundary-condition");
            let variant = problem3_theta_variant(setup, bank)?;
            let alt = ansatz(setup, &[variant])?.trace(bank, -ONE_SIDED_EPS, 2)?;
            let r = sup_after(time, BOUNDARY_T_MIN, &alt, |t| d0.eval(t));
            out.push(
                CheckRecord::at_least(format!("boundary.problem{p}.psi.variant_misses"), r, tol, 0.0)
                    .with_grid(format!("{grid} t>={BOUNDARY_T_MIN} eps={ONE_SIDED_EPS}"))
                    .with_provenance("density-variant"),
            );
        }
    }
    Ok(out)
}

/// Sup-norm of every field value and density; zero data must give zero.
pub fn check_zero_solution(field: &SolutionField) -> CheckRecord {
    let dens = field.densities.iter().map(|d| d.density.sup_norm()).fold(0.0, f64::max);
    CheckRecord::at_most(format!("zero_solution.problem{}", field.problem.number()), field.sup_norm().max(dens), 0.0, 1e-14)
        .with_grid(field_grid(field))
        .with_provenance("uniqueness")
}

/// ∫ G^μ(x, t) dx by adaptive quadrature in x, against t^{μ+α/3−1}/Γ(μ+α/3).
pub fn check_kernel_mass(alpha: FractionalOrder, mu: f64, t: f64, tol: f64) -> Result<CheckRecord> {
    let spec = KernelSpec::g(alpha, mu, 0);
    let kernel = Kernel::new(spec)?;
    let params = WrightParams::new(-alpha.delta(), spec.mu_eff())?;
    let s = t.powf(alpha.delta());
    let right = truncation_radius(params, 2.0 * core::f64::consts::PI / 3.0, 2.0 / 3.0)? * s;
    let left = truncation_radius(params, core::f64::consts::PI, 1.0 / 3.0)? * s;
    let cfg = QuadConfig::new(1e-13, 1e-12).with_max_intervals(4000);
    let mut first_err = None;
    let mut f = |x: f64| match kernel.eval(x, t) {
        Ok(v) => v.value,
        Err(e) => {
            first_err.get_or_insert(e);
            0.0
        }
    };
    let (a, _) = integrate_scalar(&mut f, -left, 0.0, cfg)?;
    let (b, _) = integrate_scalar(&mut f, 0.0, right, cfg)?;
    if let Some(e) = first_err {
        return Err(e);
    }
    let expected = kernel_mass(spec, t)?;
    Ok(CheckRecord::close(format!("mass.alpha={}.mu={mu:.6}.t={t}", alpha.alpha()), a + b, expected, tol)
        .with_grid(format!("x in [{:.4}, {:.4}] adaptive", -left, right))
        .with_provenance("mass-identity"))
}

/// ε-ladder of the second-derivative boundary potentials with τ ≡ 1 at
/// t = 1: the value at the finest ε against the jump limit, and the observed
/// order of the last two rungs against α/3.
pub fn check_jump_ladder(alpha: FractionalOrder, n_steps: usize, tol: f64) -> Result<Vec<CheckRecord>> {
    let grid = TimeGrid::new(1.0, n_steps)?;
    let density = SampledFunction::from_fn(grid, |_| 1.0);
    let cases = [(Branch::G, Side::Left, "g_left"), (Branch::G, Side::Right, "g_right"), (Branch::V, Side::Right, "v_right")];
    let ladder = [1e-1, 1e-2, 1e-3, 1e-4];
    let mut out = Vec::new();
    for (branch, side, name) in cases {
        let spec = BoundaryPotentialSpec::new(branch, alpha, 0.0, 2, density.clone())?;
        let profile = KernelProfile::new(spec.kernel_spec())?;
        let limit = jump_limit(&spec, side, 1.0)?;
        let sign = if side == Side::Left { -1.0 } else { 1.0 };
        let errs = ladder
            .iter()
            .map(|&eps| Ok(boundary_potential_with(&profile, sign * eps, &density, 1.0)? - limit))
            .collect::<Result<Vec<f64>>>()?;
        let finest = errs[errs.len() - 1];
        let id = format!("jump.{name}.alpha={}", alpha.alpha());
        let g = format!("n_steps={n_steps} t=1 tau=1 eps=1e-1..1e-4");
        out.push(CheckRecord::close(format!("{id}.limit"), limit + finest, limit, tol).with_grid(g.clone()).with_provenance("jump-relation"));
        let order = (errs[errs.len() - 2].abs() / finest.abs()).log10();
        out.push(CheckRecord::at_least(format!("{id}.order"), order, alpha.delta(), 0.0).with_grid(g).with_provenance("jump-relation"));
    }
    Ok(out)
}

/// The three Wright log-moments against (α/3, α/3, 0).
pub fn check_log_moments(alpha: FractionalOrder, tol: f64) -> Result<Vec<CheckRecord>> {
    let d = alpha.delta();
    let cases = [
        (LogMoment::RealNegative, "real_negative", d),
        (LogMoment::RotatedRe, "rotated_re", d),
        (LogMoment::RotatedIm, "rotated_im", 0.0),
    ];
    cases
        .iter()
        .map(|&(which, name, expected)| {
            let v = wright_log_moment(which, alpha)?;
            Ok(CheckRecord::close(format!("log_moment.{name}.alpha={}", alpha.alpha()), v, expected, tol)
                .with_grid("adaptive Gauss-Kronrod to the tail-bound radius")
                .with_provenance("log-moment"))
        })
        .collect()
}

/// Observed power p of a quantity with value v1 at t1 and v2 at t2.
fn observed_power(v1: f64, v2: f64, t1: f64, t2: f64) -> f64 {
    (v1.abs() / v2.abs()).ln() / (t1 / t2).ln()
}

const INITIAL_T: (f64, f64) = (1e-4, 1e-8);
const VOLUME_HALF_WIDTH: f64 = 200.0;

/// Vanishing initial values: boundary potentials with τ ≡ 1 decay at least
/// like t^{2α/3}, the volume potential of f ≡ 1 like tᵅ. Sup over probe
/// points around the anchor. The forcing support is wide enough that the
/// kernel does not reach its ends at the sampled times.
pub fn check_initial_limits(alpha: FractionalOrder, bank: &mut KernelBank) -> Result<Vec<CheckRecord>> {
    let (t1, t2) = INITIAL_T;
    let grid = TimeGrid::new(1.0, 512)?;
    let density = SampledFunction::from_fn(grid, |_| 1.0);
    let probes = [0.0, 0.5];
    let mut out = Vec::new();
    for (branch, name) in [(Branch::G, "boundary_g"), (Branch::V, "boundary_v")] {
        let profile = bank.get(KernelSpec::standard(branch, alpha, 0))?;
        let sup = |t: f64| -> Result<f64> {
            let mut m: f64 = 0.0;
            for &x in &probes {
                m = m.max(boundary_potential_with(&profile, x, &density, t)?.abs());
            }
            if branch == Branch::G {
                m = m.max(boundary_potential_with(&profile, -0.5, &density, t)?.abs());
            }
            Ok(m)
        };
        let zero = sup(0.0)?;
        let p = observed_power(sup(t1)?, sup(t2)?, t1, t2);
        let id = format!("initial_limit.{name}.alpha={}", alpha.alpha());
        out.push(CheckRecord::close(format!("{id}.at_zero"), zero, 0.0, 0.0).with_provenance("initial-limit"));
        out.push(
            CheckRecord::at_least(format!("{id}.power"), p, alpha.two_delta(), 1e-6)
                .with_grid(format!("tau=1 n_steps=512 t={t1:e},{t2:e} x=-0.5,0,0.5"))
                .with_provenance("initial-limit"),
        );
    }
    let profile = bank.get(KernelSpec::standard(Branch::G, alpha, 0))?;
    let vol = VolumePotentialSpec::new(alpha, -VOLUME_HALF_WIDTH, VOLUME_HALF_WIDTH, Forcing::separable(DataProfile::Constant(1.0), DataProfile::Constant(1.0)))?;
    let at = |x: f64| -> Result<(f64, f64, f64)> {
        let slice = VolumeSlice::new(&profile, &vol, x, t1)?;
        Ok((slice.at(0.0)?, slice.at(t1)?, slice.at(t2)?))
    };
    let mut zero: f64 = 0.0;
    let mut p = f64::INFINITY;
    for x in [-0.5, 0.0, 0.5] {
        let (z, v1, v2) = at(x)?;
        zero = zero.max(z.abs());
        p = p.min(observed_power(v1, v2, t1, t2));
    }
    let id = format!("initial_limit.volume.alpha={}", alpha.alpha());
    out.push(CheckRecord::close(format!("{id}.at_zero"), zero, 0.0, 0.0).with_provenance("initial-limit"));
    out.push(
        CheckRecord::at_least(format!("{id}.power"), p, alpha.alpha(), 1e-6)
            .with_grid(format!("f=1 on [-{VOLUME_HALF_WIDTH},{VOLUME_HALF_WIDTH}] t={t1:e},{t2:e} x=-0.5,0,0.5"))
            .with_provenance("initial-limit"),
    );
    Ok(out)
}

/// Time at which the approximate-identity limit is sampled.
pub const APPROX_IDENTITY_T: f64 = 1e-12;

/// I^{1−α} of the initial potential tends to its density: sin(πξ) on
/// [0, 1] at x = 0.5 and a bump on [−1, 1] at its centre.
pub fn check_approximate_identity(alpha: FractionalOrder, bank: &mut KernelBank, tol: f64) -> Result<Vec<CheckRecord>> {
    let cases = [
        ("sine", 0.0, 1.0, DataProfile::Sine { freq: core::f64::consts::PI }, 0.5),
        ("bump", -1.0, 1.0, DataProfile::Bump { center: 0.0, width: 0.5 }, 0.0),
    ];
    let profile = bank.get(KernelSpec::g(alpha, alpha.one_minus_delta(), 0))?;
    cases
        .into_iter()
        .map(|(name, lo, hi, density, x)| {
            let expected = density.eval(x);
            let spec = InitialPotentialSpec::new(alpha, lo, hi, density)?.integrated();
            let v = initial_potential_with(&profile, &spec, x, APPROX_IDENTITY_T)?;
            Ok(CheckRecord::close(format!("approx_identity.{name}.alpha={}", alpha.alpha()), v, expected, tol)
                .with_grid(format!("t={APPROX_IDENTITY_T:e} x={x} support=[{lo},{hi}]"))
                .with_provenance("approximate-identity"))
        })
        .collect()
}

/// Residual of ∂ₜᵅw − ∂ₓ³w − f for the volume potential w of
/// f = bump(0, 0.5) on [−1, 1], at x = 0 on two grids; the residual must
/// shrink under refinement.
pub fn check_volume_equation(alpha: FractionalOrder, bank: &mut KernelBank) -> Result<CheckRecord> {
    let profile = bank.get(KernelSpec::standard(Branch::G, alpha, 0))?;
    let forcing = Forcing::separable(DataProfile::Bump { center: 0.0, width: 0.5 }, DataProfile::Constant(1.0));
    let vol = VolumePotentialSpec::new(alpha, -1.0, 1.0, forcing.clone())?;
    let levels = [(128usize, 0.1), (256, 0.05)];
    let mut residuals = Vec::new();
    for (n, h) in levels {
        let time = TimeGrid::new(1.0, n)?;
        let x: Vec<f64> = (-2..=2).map(|k| k as f64 * h).collect();
        let cols = map_indices(x.len(), |j| VolumeSlice::new(&profile, &vol, x[j], 1.0)?.on_grid(time))?;
        let mut u = vec![0.0; x.len() * time.len()];
        for (j, col) in cols.iter().enumerate() {
            for (k, v) in col.iter().enumerate() {
                u[k * x.len() + j] = *v;
            }
        }
        residuals.push(grid_residual(&x, time, &u, alpha.alpha(), |xx, t| forcing.eval(xx, t))?);
    }
    Ok(check_refinement(format!("volume_equation.ratio.alpha={}", alpha.alpha()), &residuals, 1.5)
        .with_provenance("volume-equation"))
}

/// Default times of the mass checks.
pub const DEFAULT_T_LIST: [f64; 2] = [0.25, 1.0];

/// The identity battery for every α in `alphas`: kernel mass at each valid
/// t in `t_list`, jump ladders, log-moments, initial limits, approximate
/// identity, the homogeneous kernel equation and the volume equation.
/// Non-positive times are reported as rejected inputs. A coverage record
/// closes the report.
pub fn check_lemma_suite(alphas: &[FractionalOrder], t_list: &[f64]) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    report.note(format!("residual sup-norms are taken over t >= {T_CUT_FRACTION}·T"));
    let mut times = Vec::new();
    for &t in t_list {
        if t > 0.0 && t.is_finite() {
            times.push(t);
        } else {
            report.push(CheckRecord::rejected(format!("input.t={t}"), t, "times must be positive and finite"));
        }
    }
    for &alpha in alphas {
        let mut bank = KernelBank::new();
        for mu in [alpha.two_delta(), alpha.one_minus_delta()] {
            for &t in &times {
                report.push(check_kernel_mass(alpha, mu, t, 1e-6)?);
            }
        }
        report.records.extend(check_jump_ladder(alpha, 512, 1e-3)?);
        report.records.extend(check_log_moments(alpha, 1e-6)?);
        report.records.extend(check_initial_limits(alpha, &mut bank)?);
        report.records.extend(check_approximate_identity(alpha, &mut bank, 1e-6)?);
        report.push(check_kernel_pde(alpha)?);
        report.push(check_volume_equation(alpha, &mut bank)?);
    }
    report.assert_coverage(&LEMMA_COVERAGE);
    Ok(report)
}

/// Wright series against the Hankel loop on a fixed set of (μ, z) with |z| ≤ 8.
pub const WRIGHT_CROSS_RHO: [f64; 3] = [-1.0 / 6.0, -0.25, -0.3];
/// (μ, Re z, Im z) pairs used for every ρ in [`WRIGHT_CROSS_RHO`].
pub const WRIGHT_CROSS_POINTS: [(f64, f64, f64); 10] = [
    (0.0, 0.5, 0.0),
    (1.0 / 3.0, -2.0, 0.0),
    (0.7, 1.5, 1.5),
    (1.0, -4.0, 3.0),
    (1.2, 0.0, 6.0),
    (2.0, -8.0, 0.0),
    (0.5, -4.0, 6.928_203_230_275_509),
    (0.25, 2.5, 0.0),
    (1.5, 3.0, -2.0),
    (0.0, -6.0, -5.0),
];

pub fn check_wright_cross(tol: f64) -> Result<CheckRecord> {
    let mut worst = 0.0_f64;
    let mut count = 0;
    for &rho in &WRIGHT_CROSS_RHO {
        for &(mu, re, im) in &WRIGHT_CROSS_POINTS {
            let p = WrightParams::new(rho, mu)?;
            let z = Complex64::new(re, im);
            let a = wright_phi(p, z)?.value;
            let b = wright_phi_hankel(p, z)?.value;
            worst = worst.max((a - b).norm());
            count += 1;
        }
    }
    Ok(CheckRecord::at_most("special.wright_series_vs_hankel", worst, 0.0, tol)
        .with_grid(format!("points={count}"))
        .with_provenance("contour-representation"))
}

/// sup |F_ν(z) − ν z M_ν(z)| over ν = 0.1..0.9 and 50 points of [0, 10].
pub fn check_m_wright_relation(tol: f64) -> Result<CheckRecord> {
    let mut worst = 0.0_f64;
    let mut count = 0;
    for k in 1..=9 {
        let nu = k as f64 / 10.0;
        for j in 0..50 {
            let z = Complex64::new(10.0 * j as f64 / 49.0, 0.0);
            let f = f_wright(nu, z)?.value;
            let m = m_wright(nu, z)?.value;
            worst = worst.max((f - z * m * nu).norm());
            count += 1;
        }
    }
    Ok(CheckRecord::at_most("special.f_equals_nu_z_m", worst, 0.0, tol)
        .with_grid(format!("points={count}"))
        .with_provenance("auxiliary-function-identity"))
}

fn exp_benchmark(n: usize) -> Result<VolterraSystem> {
    let g = TimeGrid::new(1.0, n)?;
    VolterraSystem::new(g, vec![vec![1.0; n + 1]])?.with_kernel(
        0,
        0,
        |_| 1.0,
        KernelShape::Power { coeff: 1.0, exponent: 0.0 },
    )
}

/// Φ = 1 + ∫₀ᵗ Φ solved by marching at n/2 and n steps and by Picard at n:
/// error of Φ(1) against e, observed order, and march against Picard.
pub fn check_volterra_benchmark(n: usize) -> Result<Vec<CheckRecord>> {
    let e = core::f64::consts::E;
    let coarse = solve_march(&exp_benchmark(n / 2)?)?;
    let system = exp_benchmark(n)?;
    let fine = solve_march(&system)?;
    let picard = solve_picard(&system, 200, 1e-13)?;
    let err_c = (coarse.values[0][n / 2] - e).abs();
    let err_f = (fine.values[0][n] - e).abs();
    let gap = fine.values[0].iter().zip(&picard.values[0]).fold(0.0_f64, |a, (x, y)| a.max((x - y).abs()));
    let grid = format!("n={n}");
    Ok(vec![
        CheckRecord::close("volterra.exp.value", fine.values[0][n], e, 2e-4).with_grid(grid.clone()),
        CheckRecord::at_least("volterra.exp.order", (err_c / err_f).log2(), 1.8, 0.0)
            .with_grid(format!("n={},{n}", n / 2)),
        CheckRecord::at_most("volterra.exp.march_vs_picard", gap, 0.0, 1e-7).with_grid(grid),
    ]
    .into_iter()
    .map(|r| r.with_provenance("volterra-benchmark"))
    .collect())
}

/// Problem 1 with data generated by γ(t) = t, α = β = 0: sup-error of each
/// recovered density.
pub fn check_manufactured_density(alpha: FractionalOrder, n_steps: usize, tol: f64) -> Result<Vec<CheckRecord>> {
    let time = TimeGrid::new(1.0, n_steps)?;
    let mut bank = KernelBank::new();
    let setup = manufactured_problem1(alpha, time, &mut bank)?;
    let field = solve_problem1(&setup, &mut bank)?;
    let nodes = time.nodes();
    let grid = format!("alpha={} nt={n_steps}", alpha.alpha());
    Ok(field
        .densities
        .iter()
        .enumerate()
        .map(|(k, d)| {
            let err = d
                .density
                .values()
                .iter()
                .zip(&nodes)
                .fold(0.0_f64, |a, (v, &t)| a.max((v - if k == 2 { t } else { 0.0 }).abs()));
            CheckRecord::at_most(format!("manufactured.problem1.{}", d.name), err, 0.0, tol)
                .with_grid(grid.clone())
                .with_provenance("density-recovery")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        assert!(Relation::Close.holds(1.0, 1.0 + 1e-9, 1e-8));
        assert!(!Relation::AtMost.holds(2.0, 1.0, 0.5));
        assert!(Relation::AtLeast.holds(0.6, 1.0, 0.5));
        assert!(!Relation::Close.holds(f64::NAN, 0.0, 1.0));
    }

    #[test]
    fn zero_field_has_zero_residual() {
        let time = TimeGrid::new(1.0, 16).unwrap();
        let x: Vec<f64> = (0..=8).map(|j| j as f64 / 8.0).collect();
        let u = vec![0.0; x.len() * time.len()];
        assert_eq!(grid_residual(&x, time, &u, 0.5, |_, _| 0.0).unwrap(), 0.0);
        assert!(matches!(grid_residual(&x[..4], time, &u, 0.5, |_, _| 0.0), Err(Error::GridTooCoarse(_))));
    }

    #[test]
    fn coverage_reports_missing_tags() {
        let mut r = VerificationReport::new();
        r.push(CheckRecord::close("a", 1.0, 1.0, 0.0).with_provenance("log-moment"));
        r.assert_coverage(&["log-moment", "mass-identity"]);
        let c = r.get("coverage").unwrap();
        assert!(!c.pass);
        assert!(c.grid.contains("mass-identity"));
    }
}
