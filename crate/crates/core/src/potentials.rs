//! Layer and volume potentials built from the fundamental solutions.
//! Second-derivative boundary potentials come with closed-form jump limits,
//! which rest on Wright log-moment integrals.
//!
//! ```text
//! boundary:  ∫₀ᵗ K(x − a, t − η) τ(η) dη
//! initial:   ∫ₐᵇ G^μ(x − ξ, t) τ₅(ξ) dξ
//! volume:    ∫₀ᵗ ∫ₐᵇ G(x − ξ, t − η) f(ξ, η) dξ dη
//! ```

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::cheb::PiecewiseCheb;
use crate::convolution::{convolve_at, ConvolutionWeights, KernelShape};
use crate::data::DataProfile;
use crate::error::{Error, Result};
use crate::fractional::{SampledFunction, TimeGrid};
use crate::kernels::{kernel_origin_value, truncation_radius, Branch, FractionalOrder, KernelProfile, KernelSpec};
use crate::quad::{integrate, QuadConfig};
use crate::special::{Wright, WrightParams};

/// A boundary density sampled on a uniform time grid.
pub type Density = SampledFunction;

/// Cache of tabulated kernel profiles keyed by their spec.
#[derive(Debug, Clone, Default)]
pub struct KernelBank {
    entries: Vec<(KernelSpec, Arc<KernelProfile>)>,
}

impl KernelBank {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Profile for `spec`, built on first use.
    pub fn get(&mut self, spec: KernelSpec) -> Result<Arc<KernelProfile>> {
        if let Some((_, p)) = self.entries.iter().find(|(s, _)| *s == spec) {
            return Ok(p.clone());
        }
        let p = Arc::new(KernelProfile::new(spec)?);
        self.entries.push((spec, p.clone()));
        Ok(p)
    }

    /// Build every missing profile, concurrently when the `parallel`
    /// feature is enabled.
    pub fn prefetch(&mut self, specs: &[KernelSpec]) -> Result<()> {
        let mut missing: Vec<KernelSpec> = Vec::new();
        for s in specs {
            if !self.entries.iter().any(|(e, _)| e == s) && !missing.contains(s) {
                missing.push(*s);
            }
        }
        #[cfg(feature = "parallel")]
        let built: Vec<Result<KernelProfile>> = {
            use rayon::prelude::*;
            missing.par_iter().map(|s| KernelProfile::new(*s)).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let built: Vec<Result<KernelProfile>> = missing.iter().map(|s| KernelProfile::new(*s)).collect();
        for (s, p) in missing.into_iter().zip(built) {
            self.entries.push((s, Arc::new(p?)));
        }
        Ok(())
    }
}

/// Time-convolution rule for the kernel s ↦ K(offset, s) of a profile.
///
/// At the anchor the kernel is an exact power s^{m−1}·g(0); elsewhere it
/// vanishes to all orders below s = (|offset|/Y)^{1/δ}, Y being the profile
/// extent on that side.
pub fn boundary_shape(profile: &KernelProfile, offset: f64) -> Result<KernelShape> {
    let spec = profile.spec();
    if offset == 0.0 {
        let c = kernel_origin_value(spec)?;
        let exponent = spec.mu_eff() - 1.0;
        if exponent <= -1.0 {
            return Err(Error::InvalidParameter(format!(
                "kernel weight {} is not integrable at the anchor",
                spec.mu_eff()
            )));
        }
        return Ok(KernelShape::Power { coeff: c, exponent });
    }
    let (lo, hi) = profile.extent();
    let reach = if offset > 0.0 { hi } else { -lo };
    if offset < 0.0 && spec.branch == Branch::V {
        return Err(Error::Domain("V is tabulated for x > 0 only".into()));
    }
    Ok(KernelShape::Vanishing { cutoff: (offset.abs() / reach).powf(1.0 / spec.alpha.delta()) })
}

/// Product-integration weights of ∫₀ᵗ K(offset, t − η) τ(η) dη on `grid`.
pub fn boundary_weights(profile: &KernelProfile, offset: f64, grid: TimeGrid) -> Result<ConvolutionWeights> {
    let shape = boundary_shape(profile, offset)?;
    ConvolutionWeights::new(|s| profile.eval(offset, s), shape, grid)
}

/// ∫₀ᵗ K(offset, t − η) τ(η) dη at any t ≥ 0, τ interpolated linearly.
pub fn boundary_potential_with(profile: &KernelProfile, offset: f64, density: &Density, t: f64) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::Domain(format!("potential needs t >= 0, got {t}")));
    }
    let shape = boundary_shape(profile, offset)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    let grid = density.grid();
    let h = grid.step();
    let u = t / h;
    let n = u.round();
    if (u - n).abs() < 1e-9 && n as usize <= grid.n_steps() {
        let n = n as usize;
        let sub = TimeGrid::new(n as f64 * h, n.max(2))?;
        if n >= 2 {
            let w = ConvolutionWeights::new(|s| profile.eval(offset, s), shape, sub)?;
            return Ok(w.apply(density.values(), n));
        }
    }
    convolve_at(|s| profile.eval(offset, s), shape, |r| density.interpolate(r), t, h)
}

/// A boundary potential: kernel family, anchor point and density.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPotentialSpec {
    pub branch: Branch,
    pub alpha: FractionalOrder,
    pub anchor: f64,
    pub dx_count: u32,
    pub density: Density,
}

impl BoundaryPotentialSpec {
    pub fn new(branch: Branch, alpha: FractionalOrder, anchor: f64, dx_count: u32, density: Density) -> Result<Self> {
        if dx_count > 2 {
            return Err(Error::InvalidParameter(format!("boundary potentials use up to 2 derivatives, got {dx_count}")));
        }
        Ok(Self { branch, alpha, anchor, dx_count, density })
    }

    /// Kernel with weight 2α/3 and the derivative count of `spec`.
    pub fn kernel_spec(&self) -> KernelSpec {
        KernelSpec::standard(self.branch, self.alpha, self.dx_count)
    }
}

/// ∫₀ᵗ K(x − a, t − η) τ(η) dη with K = G or V, weight 2α/3.
pub fn boundary_potential(spec: &BoundaryPotentialSpec, x: f64, t: f64) -> Result<f64> {
    if x == spec.anchor && spec.kernel_spec().has_jump() {
        return Err(Error::SingularPoint(format!("second-derivative potential at its anchor x = {x}")));
    }
    let profile = KernelProfile::new(spec.kernel_spec())?;
    boundary_potential_with(&profile, x - spec.anchor, &spec.density, t)
}

/// Side of the anchor from which a limit is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One-sided limit at the anchor of a second-derivative boundary potential:
/// τ(t)/3 from the left and −2τ(t)/3 from the right for G, 0 from the right
/// for V.
pub fn jump_limit(spec: &BoundaryPotentialSpec, side: Side, t: f64) -> Result<f64> {
    if spec.dx_count != 2 {
        return Err(Error::InvalidParameter(format!("jump limits need dx_count = 2, got {}", spec.dx_count)));
    }
    if !(t > 0.0) {
        return Err(Error::Domain(format!("jump limit needs t > 0, got {t}")));
    }
    let tau = spec.density.interpolate(t);
    match (spec.branch, side) {
        (Branch::G, Side::Left) => Ok(tau / 3.0),
        (Branch::G, Side::Right) => Ok(-2.0 * tau / 3.0),
        (Branch::V, Side::Right) => Ok(0.0),
        (Branch::V, Side::Left) => Err(Error::Unsupported("V has no left limit: it is defined for x > 0".into())),
    }
}

/// Which log-moment of φ(−α/3, 0; ·) to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogMoment {
    /// ∫₀^∞ φ(−α/3, 0; −u) du/u = α/3.
    RealNegative,
    /// ∫₀^∞ Re φ(−α/3, 0; e^{2πi/3}u) du/u = α/3.
    RotatedRe,
    /// ∫₀^∞ Im φ(−α/3, 0; e^{2πi/3}u) du/u = 0.
    RotatedIm,
}

/// Numerical value of a log-moment; φ(−α/3, 0; w)/u stays bounded as u → 0
/// since φ(−ν, 0; −u) = νu·M_ν(u).
pub fn wright_log_moment(which: LogMoment, alpha: FractionalOrder) -> Result<f64> {
    let delta = alpha.delta();
    let params = WrightParams::new(-delta, 0.0)?;
    let arg = match which {
        LogMoment::RealNegative => PI,
        _ => 2.0 * PI / 3.0,
    };
    let dir = Complex64::from_polar(1.0, arg);
    let upper = truncation_radius(params, arg, 1.0)?;
    let w = Wright::new(params);
    let cfg = QuadConfig::new(1e-14, 1e-12).with_max_intervals(4000);
    let mut err = None;
    let q = integrate(
        |u| {
            let v = match w.value(dir * u) {
                Ok(v) => v / u,
                Err(e) => {
                    err.get_or_insert(e);
                    Complex64::new(0.0, 0.0)
                }
            };
            [match which {
                LogMoment::RealNegative | LogMoment::RotatedRe => v.re,
                LogMoment::RotatedIm => v.im,
            }]
        },
        0.0,
        upper,
        cfg,
    )?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(q.value[0])
}

fn y_config() -> QuadConfig {
    QuadConfig::new(1e-15, 1e-12).with_max_intervals(2000)
}

/// ∫ g(y)·p(x − σy) dy over the y with x − σy ∈ [lo, hi], split at y = 0.
fn similarity_integral(profile: &KernelProfile, p: &DataProfile, lo: f64, hi: f64, x: f64, sigma: f64) -> Result<f64> {
    let (ylo, yhi) = profile.extent();
    let a = if hi.is_finite() { ((x - hi) / sigma).max(ylo) } else { ylo };
    let b = if lo.is_finite() { ((x - lo) / sigma).min(yhi) } else { yhi };
    if !(b > a) {
        return Ok(0.0);
    }
    let f = |y: f64| [profile.value(y) * p.eval(x - sigma * y)];
    let mut total = 0.0;
    if a < 0.0 {
        total += integrate(f, a, b.min(0.0), y_config())?.value[0];
    }
    if b > 0.0 {
        total += integrate(f, a.max(0.0), b, y_config())?.value[0];
    }
    Ok(total)
}

/// An initial potential: a density on its support, with a kernel weight.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialPotentialSpec {
    pub alpha: FractionalOrder,
    pub lower: f64,
    pub upper: f64,
    pub density: DataProfile,
    /// Kernel weight: 2α/3 for the potential itself, 1 − α/3 for its
    /// fractional integral of order 1 − α.
    pub mu: f64,
}

impl InitialPotentialSpec {
    pub fn new(alpha: FractionalOrder, lower: f64, upper: f64, density: DataProfile) -> Result<Self> {
        if !(upper > lower) {
            return Err(Error::InvalidParameter(format!("initial potential support [{lower}, {upper}] is empty")));
        }
        Ok(Self { alpha, lower, upper, density, mu: alpha.two_delta() })
    }

    /// The same potential under the fractional integral of order 1 − α.
    pub fn integrated(mut self) -> Self {
        self.mu = self.alpha.one_minus_delta();
        self
    }

    pub fn kernel_spec(&self) -> KernelSpec {
        KernelSpec::g(self.alpha, self.mu, 0)
    }
}

/// ∫ G^μ(x − ξ, t) τ₅(ξ) dξ using a prebuilt profile of `spec.kernel_spec()`.
pub fn initial_potential_with(profile: &KernelProfile, spec: &InitialPotentialSpec, x: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("initial potential needs t > 0, got {t}")));
    }
    let d = spec.alpha.delta();
    let sigma = t.powf(d);
    let (slo, shi) = spec.density.support();
    let lo = spec.lower.max(slo);
    let hi = spec.upper.min(shi);
    if !(hi > lo) {
        return Ok(0.0);
    }
    let inner = similarity_integral(profile, &spec.density, lo, hi, x, sigma)?;
    Ok(t.powf(spec.mu - 1.0) * sigma * inner)
}

/// ∫ₐᵇ G^μ(x − ξ, t) τ₅(ξ) dξ.
pub fn initial_potential(spec: &InitialPotentialSpec, x: f64, t: f64) -> Result<f64> {
    let profile = KernelProfile::new(spec.kernel_spec())?;
    initial_potential_with(&profile, spec, x, t)
}

/// One separable forcing term p(x)·q(t).
#[derive(Debug, Clone, PartialEq)]
pub struct ForcingTerm {
    pub space: DataProfile,
    pub time: DataProfile,
}

/// Forcing f(x, t) = Σ p_k(x)·q_k(t).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Forcing {
    pub terms: Vec<ForcingTerm>,
}

impl Forcing {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn separable(space: DataProfile, time: DataProfile) -> Self {
        Self { terms: alloc::vec![ForcingTerm { space, time }] }
    }

    pub fn with_term(mut self, space: DataProfile, time: DataProfile) -> Self {
        self.terms.push(ForcingTerm { space, time });
        self
    }

    pub fn eval(&self, x: f64, t: f64) -> f64 {
        self.terms.iter().map(|k| k.space.eval(x) * k.time.eval(t)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|k| k.space.is_zero() || k.time.is_zero())
    }
}

/// A volume potential: spatial support [lower, upper] (either end may be
/// infinite) and forcing.
#[derive(Debug, Clone, PartialEq)]
pub struct VolumePotentialSpec {
    pub alpha: FractionalOrder,
    pub lower: f64,
    pub upper: f64,
    pub forcing: Forcing,
}

impl VolumePotentialSpec {
    pub fn new(alpha: FractionalOrder, lower: f64, upper: f64, forcing: Forcing) -> Result<Self> {
        if !(upper > lower) {
            return Err(Error::InvalidParameter(format!("volume potential support [{lower}, {upper}] is empty")));
        }
        Ok(Self { alpha, lower, upper, forcing })
    }
}

const SLICE_TOL: f64 = 1e-12;

struct SliceTerm {
    transform: PiecewiseCheb,
    time: DataProfile,
}

/// The volume potential of one kernel at a fixed x as a function of t.
///
/// With σ = s^{α/3} and m the kernel's effective weight,
///
/// ```text
/// ∫₀ᵗ∫ G(x − ξ, s) p(ξ) q(t − s) dξ ds = (3/α) ∫₀^{t^{α/3}} σ^{3m/α} P(σ) q(t − σ^{3/α}) dσ,
/// P(σ) = ∫ g(y) p(x − σy) dy,
/// ```
///
/// and P is tabulated once per term by piecewise Chebyshev interpolation.
pub struct VolumeSlice {
    delta: f64,
    power: f64,
    t_max: f64,
    terms: Vec<SliceTerm>,
}

impl VolumeSlice {
    /// Slice at `x` for t ∈ [0, t_max]; `profile` may be any G-family kernel
    /// with m + α/3 > 0.
    pub fn new(profile: &KernelProfile, spec: &VolumePotentialSpec, x: f64, t_max: f64) -> Result<Self> {
        let kspec = profile.spec();
        if kspec.branch != Branch::G {
            return Err(Error::Unsupported("volume potentials use the G family".into()));
        }
        let delta = kspec.alpha.delta();
        let m = kspec.mu_eff();
        if !(m + delta > 0.0) {
            return Err(Error::InvalidParameter(format!("volume kernel weight {m} is not integrable")));
        }
        if !(t_max > 0.0) {
            return Err(Error::Domain(format!("volume slice needs t_max > 0, got {t_max}")));
        }
        let sigma_max = t_max.powf(delta);
        let mut terms = Vec::new();
        for term in &spec.forcing.terms {
            if term.space.is_zero() || term.time.is_zero() {
                continue;
            }
            let (slo, shi) = term.space.support();
            let lo = spec.lower.max(slo);
            let hi = spec.upper.min(shi);
            if !(hi > lo) {
                continue;
            }
            let scale = space_scale(&term.space, lo, hi, x, sigma_max, profile);
            let transform = PiecewiseCheb::build(
                |sigma| similarity_integral(profile, &term.space, lo, hi, x, sigma),
                0.0,
                sigma_max,
                4,
                SLICE_TOL * scale.max(1.0),
            )?;
            terms.push(SliceTerm { transform, time: term.time.clone() });
        }
        Ok(Self { delta, power: m / delta, t_max, terms })
    }

    /// Value at time t ∈ [0, t_max].
    pub fn at(&self, t: f64) -> Result<f64> {
        if t <= 0.0 || self.terms.is_empty() {
            return Ok(0.0);
        }
        if t > self.t_max * (1.0 + 1e-12) {
            return Err(Error::Domain(format!("volume slice built for t <= {}, asked at {t}", self.t_max)));
        }
        let inv = 1.0 / self.delta;
        let cfg = QuadConfig::new(1e-15, 1e-12).with_max_intervals(2000);
        let mut total = 0.0;
        for term in &self.terms {
            // restrict σ to the time support of q(t − s)
            let (qlo, qhi) = term.time.support();
            let s_lo = (t - qhi).max(0.0);
            let s_hi = (t - qlo).min(t);
            if !(s_hi > s_lo) {
                continue;
            }
            let (a, b) = (s_lo.powf(self.delta), s_hi.powf(self.delta));
            let q = integrate(
                |sigma| {
                    let w = if self.power == 0.0 { 1.0 } else { sigma.powf(self.power) };
                    [w * term.transform.eval(sigma) * term.time.eval(t - sigma.powf(inv))]
                },
                a,
                b,
                cfg,
            )?;
            total += q.value[0];
        }
        Ok(total * inv)
    }

    /// Values at every node of `grid` (0 at t = 0).
    pub fn on_grid(&self, grid: TimeGrid) -> Result<Vec<f64>> {
        grid.nodes().iter().map(|&t| self.at(t)).collect()
    }
}

fn space_scale(p: &DataProfile, lo: f64, hi: f64, x: f64, sigma_max: f64, profile: &KernelProfile) -> f64 {
    let (ylo, yhi) = profile.extent();
    let a = lo.max(x - sigma_max * yhi);
    let b = hi.min(x - sigma_max * ylo);
    if !(b > a) {
        return 0.0;
    }
    (0..=64).map(|k| p.eval(a + (b - a) * k as f64 / 64.0).abs()).fold(0.0, f64::max)
}

/// ∫₀ᵗ∫ₐᵇ G^{2α/3}(x − ξ, t − η) f(ξ, η) dξ dη.
pub fn volume_potential(spec: &VolumePotentialSpec, x: f64, t: f64) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::Domain(format!("volume potential needs t >= 0, got {t}")));
    }
    if t == 0.0 || spec.forcing.is_zero() {
        return Ok(0.0);
    }
    let profile = KernelProfile::new(KernelSpec::standard(Branch::G, spec.alpha, 0))?;
    VolumeSlice::new(&profile, spec, x, t)?.at(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{gamma, rgamma};

    fn order(a: f64) -> FractionalOrder {
        FractionalOrder::new(a).unwrap()
    }

    #[test]
    fn unit_density_at_anchor_is_closed_form() {
        let a = order(0.5);
        let g = TimeGrid::new(1.0, 16).unwrap();
        let spec = BoundaryPotentialSpec::new(Branch::G, a, 0.0, 0, SampledFunction::from_fn(g, |_| 1.0)).unwrap();
        let v = boundary_potential(&spec, 0.0, 1.0).unwrap();
        // ∫₀¹ s^{2α/3−1} ds/(3Γ(2α/3)) = 1/(2αΓ(2α/3)) = 1/Γ(1/3) at α = 1/2
        assert!((v - rgamma(1.0 / 3.0)).abs() < 1e-12, "{v}");
        let half = boundary_potential(&spec, 0.0, 0.53).unwrap();
        assert!((half - 0.53f64.powf(1.0 / 3.0) * rgamma(1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn second_derivative_rejects_anchor() {
        let g = TimeGrid::new(1.0, 8).unwrap();
        let spec = BoundaryPotentialSpec::new(Branch::G, order(0.5), 0.3, 2, SampledFunction::zeros(g)).unwrap();
        assert!(matches!(boundary_potential(&spec, 0.3, 1.0), Err(Error::SingularPoint(_))));
        assert_eq!(jump_limit(&spec, Side::Left, 1.0).unwrap(), 0.0);
        let v = BoundaryPotentialSpec { branch: Branch::V, ..spec };
        assert!(matches!(jump_limit(&v, Side::Left, 1.0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn log_moment_of_real_negative_branch() {
        let v = wright_log_moment(LogMoment::RealNegative, order(0.5)).unwrap();
        assert!((v - 1.0 / 6.0).abs() < 1e-7, "{v}");
    }

    #[test]
    fn volume_of_unit_forcing_is_power() {
        let a = order(0.5);
        let spec = VolumePotentialSpec::new(
            a,
            f64::NEG_INFINITY,
            f64::INFINITY,
            Forcing::separable(DataProfile::Constant(1.0), DataProfile::Constant(1.0)),
        )
        .unwrap();
        let v = volume_potential(&spec, 0.2, 1.0).unwrap();
        assert!((v - 1.0 / gamma(1.5)).abs() < 1e-9, "{v}");
    }

    #[test]
    fn initial_potential_of_unit_density_is_mass() {
        let a = order(0.4);
        let spec = InitialPotentialSpec::new(a, -1e3, 1e3, DataProfile::Constant(1.0)).unwrap();
        let v = initial_potential(&spec, 0.1, 0.5).unwrap();
        let mass = 0.5f64.powf(a.alpha() - 1.0) * rgamma(a.alpha());
        assert!((v - mass).abs() < 1e-10 * mass, "{v} vs {mass}");
        let unit = initial_potential(&spec.integrated(), 0.1, 0.5).unwrap();
        assert!((unit - 1.0).abs() < 1e-10);
    }
}
