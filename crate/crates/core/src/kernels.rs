//! Fundamental solutions G_α^μ and V_α^μ of ∂ₜᵅu − u_xxx = 0, their spatial
//! derivatives (realized as shifts of μ) and their fractional time transforms.
//!
//! With δ = α/3, m = μ − k·δ for `k` spatial derivatives and y = x·t^{−δ}:
//!
//! ```text
//! G (x < 0):  (1/3) t^{m−1} φ(−δ, m; y)
//! G (x > 0): −(2/3) t^{m−1} Re[e^{2πi(1+k)/3} φ(−δ, m; e^{2πi/3} y)]
//! V (x > 0):  (1/3) t^{m−1} Im[e^{2πi(1+k)/3} φ(−δ, m; e^{2πi/3} y)]
//! ```

use alloc::format;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::cheb::PiecewiseCheb;
use crate::error::{Error, Result};
use crate::special::{decay_rate_sup, rgamma, TailBound, Wright, WrightParams};

/// Fractional order α ∈ (0, 1) with its derived exponents.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha < 1.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::OrderOutOfRange(alpha))
        }
    }

    pub fn alpha(self) -> f64 {
        self.0
    }

    /// δ = α/3.
    pub fn delta(self) -> f64 {
        self.0 / 3.0
    }

    /// 2α/3.
    pub fn two_delta(self) -> f64 {
        2.0 * self.0 / 3.0
    }

    /// 1 − α/3.
    pub fn one_minus_delta(self) -> f64 {
        1.0 - self.0 / 3.0
    }
}

/// Kernel family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    G,
    V,
}

/// A member of the fundamental-solution family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub branch: Branch,
    pub alpha: FractionalOrder,
    /// Weight exponent μ before spatial derivatives.
    pub mu: f64,
    /// Number of spatial derivatives applied.
    pub dx_count: u32,
    /// Permit V at x < 0 by continuing the x > 0 formula. Not part of the
    /// method; experimentation only.
    pub extend_v: bool,
}

impl KernelSpec {
    pub fn new(branch: Branch, alpha: FractionalOrder, mu: f64, dx_count: u32) -> Self {
        Self { branch, alpha, mu, dx_count, extend_v: false }
    }

    pub fn g(alpha: FractionalOrder, mu: f64, dx_count: u32) -> Self {
        Self::new(Branch::G, alpha, mu, dx_count)
    }

    pub fn v(alpha: FractionalOrder, mu: f64, dx_count: u32) -> Self {
        Self::new(Branch::V, alpha, mu, dx_count)
    }

    /// The standard weight μ = 2α/3.
    pub fn standard(branch: Branch, alpha: FractionalOrder, dx_count: u32) -> Self {
        Self::new(branch, alpha, alpha.two_delta(), dx_count)
    }

    pub fn with_extension(mut self) -> Self {
        self.extend_v = true;
        self
    }

    /// Effective weight m = μ − dx_count·α/3; the time prefactor is t^{m−1}.
    pub fn mu_eff(&self) -> f64 {
        self.mu - self.dx_count as f64 * self.alpha.delta()
    }

    /// Same family with one more spatial derivative.
    pub fn differentiated(&self) -> Self {
        Self { dx_count: self.dx_count + 1, ..*self }
    }

    /// G with dx_count ≡ 2 (mod 3) jumps across x = 0: the one-sided limits of
    /// its potentials are 1/3 and −2/3 of the density.
    pub fn has_jump(&self) -> bool {
        self.branch == Branch::G && self.dx_count % 3 == 2
    }

    fn rotation(&self) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * (1.0 + self.dx_count as f64) / 3.0)
    }
}

/// Fractional time operators acting on a kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeOp {
    /// Caputo derivative of order ν (shifts μ by −ν).
    Caputo(f64),
    /// Riemann-Liouville integral of order ν (shifts μ by +ν).
    RlIntegral(f64),
}

/// `KernelSpec` of the transformed kernel: ∂ₜ^ν G^μ = G^{μ−ν} and J^ν G^μ = G^{μ+ν}.
pub fn kernel_time_transform(spec: KernelSpec, op: TimeOp) -> KernelSpec {
    let shift = match op {
        TimeOp::Caputo(nu) => -nu,
        TimeOp::RlIntegral(nu) => nu,
    };
    KernelSpec { mu: spec.mu + shift, ..spec }
}

/// ∫ G^μ(x, t) dx over the real line: t^{μ+δ−1}/Γ(μ+δ).
pub fn kernel_mass(spec: KernelSpec, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("kernel mass needs t > 0, got {t}")));
    }
    if spec.branch != Branch::G || spec.dx_count != 0 {
        return Err(Error::Unsupported("kernel mass is defined for G without spatial derivatives".into()));
    }
    let e = spec.mu + spec.alpha.delta();
    if !(e > 0.0) {
        return Err(Error::InvalidParameter(format!("mass needs mu + alpha/3 > 0, got {e}")));
    }
    Ok(t.powf(e - 1.0) * rgamma(e))
}

/// A kernel value together with the similarity variable y = x·t^{−α/3}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: f64,
    pub similarity_arg: f64,
}

/// Exact evaluator for one kernel spec, caching the Wright coefficients.
#[derive(Debug, Clone)]
pub struct Kernel {
    spec: KernelSpec,
    wright: Wright,
}

impl Kernel {
    pub fn new(spec: KernelSpec) -> Result<Self> {
        let params = WrightParams::new(-spec.alpha.delta(), spec.mu_eff())?;
        Ok(Self { spec, wright: Wright::new(params) })
    }

    pub fn spec(&self) -> KernelSpec {
        self.spec
    }

    /// Similarity profile g(y) = K(y, 1).
    pub fn profile(&self, y: f64) -> Result<f64> {
        let s = &self.spec;
        let m = s.mu_eff();
        if y == 0.0 {
            return self.at_origin(m);
        }
        match s.branch {
            Branch::G if y < 0.0 => Ok(self.wright.eval(Complex64::new(y, 0.0))?.value.re / 3.0),
            Branch::G => Ok(-2.0 / 3.0 * (s.rotation() * self.rotated(y)?).re),
            Branch::V if y < 0.0 && !s.extend_v => {
                Err(Error::Domain("V is defined for x > 0 only (enable the extension to continue it)".into()))
            }
            Branch::V => Ok((s.rotation() * self.rotated(y)?).im / 3.0),
        }
    }

    fn rotated(&self, y: f64) -> Result<Complex64> {
        Ok(self.wright.eval(Complex64::from_polar(y, 2.0 * PI / 3.0))?.value)
    }

    fn at_origin(&self, _m: f64) -> Result<f64> {
        kernel_origin_value(self.spec)
    }

    pub fn eval(&self, x: f64, t: f64) -> Result<KernelValue> {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("kernel evaluation needs t > 0, got {t}")));
        }
        let y = x * t.powf(-self.spec.alpha.delta());
        let g = self.profile(y)?;
        Ok(KernelValue { value: t.powf(self.spec.mu_eff() - 1.0) * g, similarity_arg: y })
    }
}

/// Profile value g(0) = K(0, 1); for V this is the limit from x > 0.
/// Kernels whose one-sided limits differ at the origin are rejected.
pub fn kernel_origin_value(spec: KernelSpec) -> Result<f64> {
    let r = rgamma(spec.mu_eff());
    match spec.branch {
        Branch::G if spec.has_jump() => Err(Error::SingularPoint(format!(
            "G with {} spatial derivatives has different one-sided limits at x = 0",
            spec.dx_count
        ))),
        Branch::G => Ok(r / 3.0),
        Branch::V => Ok(spec.rotation().im * r / 3.0),
    }
}

/// One-off evaluation of a kernel at (x, t).
pub fn kernel_eval(spec: KernelSpec, x: f64, t: f64) -> Result<KernelValue> {
    Kernel::new(spec)?.eval(x, t)
}

/// Level below which the profile is treated as zero.
pub const PROFILE_CUTOFF: f64 = 1e-17;
/// Largest |y| tabulated by a profile.
pub const PROFILE_MAX_EXTENT: f64 = 400.0;
const PROFILE_TOL: f64 = 5e-13;

/// Fast tabulated similarity profile y ↦ K(y, 1) of one kernel spec.
///
/// Each side of y = 0 is a piecewise Chebyshev interpolant on [0, Y] in |y|,
/// with Y chosen from a calibrated exponential tail bound so that the profile
/// is below [`PROFILE_CUTOFF`] beyond it.
#[derive(Debug, Clone)]
pub struct KernelProfile {
    spec: KernelSpec,
    negative: Option<PiecewiseCheb>,
    positive: PiecewiseCheb,
    y_negative: f64,
    y_positive: f64,
    jump: bool,
}

pub(crate) fn truncation_radius(params: WrightParams, arg: f64, prefactor: f64) -> Result<f64> {
    let delta = params.delta();
    // Calibrate past the point where the supremal rate dominates any algebraic prefactor.
    let nu = decay_rate_sup(delta, arg);
    let reach = ((60.0 / nu).powf(1.0 - delta)).clamp(20.0, PROFILE_MAX_EXTENT);
    let bound = TailBound::calibrate_on(params, arg, reach, 800)?;
    let scaled = TailBound { constant: bound.constant * prefactor, ..bound };
    Ok(scaled.radius_for(PROFILE_CUTOFF).clamp(1.0, PROFILE_MAX_EXTENT))
}

impl KernelProfile {
    pub fn new(spec: KernelSpec) -> Result<Self> {
        let kernel = Kernel::new(spec)?;
        let params = WrightParams::new(-spec.alpha.delta(), spec.mu_eff())?;
        let y_positive = truncation_radius(params, 2.0 * PI / 3.0, 2.0 / 3.0)?;
        let positive = PiecewiseCheb::build(|y| kernel.profile(y.max(f64::MIN_POSITIVE)), 0.0, y_positive, 8, PROFILE_TOL)?;
        let (negative, y_negative) = match spec.branch {
            Branch::G => {
                let y_neg = truncation_radius(params, PI, 1.0 / 3.0)?;
                let cheb = PiecewiseCheb::build(|u| kernel.profile(-u.max(f64::MIN_POSITIVE)), 0.0, y_neg, 4, PROFILE_TOL)?;
                (Some(cheb), y_neg)
            }
            Branch::V => (None, 0.0),
        };
        let jump = spec.has_jump();
        Ok(Self { spec, negative, positive, y_negative, y_positive, jump })
    }

    pub fn spec(&self) -> KernelSpec {
        self.spec
    }

    /// Support of the tabulated profile, `[−Y₋, Y₊]`.
    pub fn extent(&self) -> (f64, f64) {
        (-self.y_negative, self.y_positive)
    }

    /// True if the one-sided limits at y = 0 differ.
    pub fn has_jump(&self) -> bool {
        self.jump
    }

    /// g(y); y = 0 returns the right limit, and V at y < 0 returns NaN.
    pub fn value(&self, y: f64) -> f64 {
        if y >= 0.0 {
            if y > self.y_positive {
                0.0
            } else {
                self.positive.eval(y)
            }
        } else {
            match &self.negative {
                Some(c) if -y <= self.y_negative => c.eval(-y),
                Some(_) => 0.0,
                None => f64::NAN,
            }
        }
    }

    /// K(x, t) = t^{m−1} g(x t^{−δ}).
    pub fn eval(&self, x: f64, t: f64) -> f64 {
        let d = self.spec.alpha.delta();
        t.powf(self.spec.mu_eff() - 1.0) * self.value(x * t.powf(-d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(a: f64) -> FractionalOrder {
        FractionalOrder::new(a).unwrap()
    }

    #[test]
    fn order_guard_names_invariant() {
        let e = FractionalOrder::new(1.5).unwrap_err();
        assert!(alloc::format!("{e}").contains("0<alpha<1"));
    }

    #[test]
    fn boundary_values_at_origin() {
        let a = order(0.5);
        let g = kernel_eval(KernelSpec::standard(Branch::G, a, 0), 0.0, 1.0).unwrap().value;
        assert!((g - 0.124_427_391_302_465).abs() < 1e-13);
        let v = kernel_eval(KernelSpec::standard(Branch::V, a, 0), 0.0, 1.0).unwrap().value;
        assert!((v - 0.107_757_281_794_562).abs() < 1e-13);
        let g1 = kernel_eval(KernelSpec::standard(Branch::G, a, 1), 0.0, 1.0).unwrap().value;
        assert!((g1 - 0.059_884_011_835_965_8).abs() < 1e-13);
        assert!(matches!(
            kernel_eval(KernelSpec::standard(Branch::G, a, 2), 0.0, 1.0),
            Err(Error::SingularPoint(_))
        ));
    }

    #[test]
    fn one_sided_limits_agree_for_continuous_kernels() {
        let a = order(0.5);
        for dx in 0..2 {
            let k = Kernel::new(KernelSpec::standard(Branch::G, a, dx)).unwrap();
            let l = k.eval(-1e-9, 1.0).unwrap().value;
            let r = k.eval(1e-9, 1.0).unwrap().value;
            assert!((l - r).abs() < 1e-8, "dx={dx}: {l} {r}");
        }
    }

    #[test]
    fn v_rejects_negative_x_without_extension() {
        let spec = KernelSpec::standard(Branch::V, order(0.5), 0);
        assert!(matches!(kernel_eval(spec, -0.5, 1.0), Err(Error::Domain(_))));
        assert!(kernel_eval(spec.with_extension(), -0.5, 1.0).is_ok());
        assert!(matches!(kernel_eval(spec, 0.5, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn time_transforms_shift_weight() {
        let a = order(0.5);
        let s = KernelSpec::standard(Branch::G, a, 0);
        let j = kernel_time_transform(s, TimeOp::RlIntegral(1.0 - a.alpha()));
        assert!((j.mu - a.one_minus_delta()).abs() < 1e-15);
        let c = kernel_time_transform(s, TimeOp::Caputo(a.alpha()));
        assert!((c.mu + a.delta()).abs() < 1e-15);
        assert_eq!(kernel_time_transform(s, TimeOp::Caputo(0.0)), s);
    }

    #[test]
    fn mass_values() {
        let a = order(0.5);
        let m = kernel_mass(KernelSpec::standard(Branch::G, a, 0), 1.0).unwrap();
        assert!((m - 0.564_189_583_547_756_3).abs() < 1e-14);
        let unit = kernel_mass(KernelSpec::g(a, a.one_minus_delta(), 0), 0.37).unwrap();
        assert!((unit - 1.0).abs() < 1e-14);
    }

    #[test]
    fn profile_matches_exact_evaluation() {
        let a = order(0.6);
        for (branch, dx) in [(Branch::G, 0), (Branch::G, 2), (Branch::V, 1)] {
            let spec = KernelSpec::standard(branch, a, dx);
            let k = Kernel::new(spec).unwrap();
            let p = KernelProfile::new(spec).unwrap();
            for i in 1..60 {
                let y = -12.0 + 0.41 * i as f64;
                if branch == Branch::V && y < 0.0 {
                    continue;
                }
                let exact = k.profile(y).unwrap();
                assert!((p.value(y) - exact).abs() < 1e-12, "{branch:?} dx={dx} y={y}: {} vs {exact}", p.value(y));
            }
        }
    }
}
