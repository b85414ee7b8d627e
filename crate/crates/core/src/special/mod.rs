//! Special functions: reciprocal gamma, the Wright function with negative
//! first parameter, the auxiliary M-Wright pair and Mittag-Leffler functions.

mod contour;
pub mod gamma;
mod wright;

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

pub use contour::{wright_phi_hankel, wright_phi_rays};
pub use gamma::{gamma, ln_gamma, rgamma};
pub use wright::{in_decay_sector, wright_phi, wright_phi_with, EvalResult, Wright, WrightParams, SERIES_CAP, SERIES_TOL};

fn check_nu(nu: f64) -> Result<()> {
    if nu > 0.0 && nu < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("nu = {nu} must lie in (0, 1)")))
    }
}

/// M_ν(z) = φ(−ν, 1−ν; −z).
pub fn m_wright(nu: f64, z: Complex64) -> Result<EvalResult> {
    check_nu(nu)?;
    Wright::new(WrightParams::new(-nu, 1.0 - nu)?).eval(-z)
}

/// F_ν(z) = φ(−ν, 0; −z).
pub fn f_wright(nu: f64, z: Complex64) -> Result<EvalResult> {
    check_nu(nu)?;
    Wright::new(WrightParams::new(-nu, 0.0)?).eval(-z)
}

/// Supremum of admissible decay rates ν in
/// |φ(−δ, μ; z)| ≤ C exp(−ν|z|^{1/(1−δ)}) along the ray of argument `arg`.
pub fn decay_rate_sup(delta: f64, arg: f64) -> f64 {
    (1.0 - delta) * delta.powf(delta / (1.0 - delta)) * ((PI - arg.abs()) / (1.0 - delta)).cos()
}

/// Fraction of the supremal rate used by [`TailBound`].
pub const TAIL_RATE_FRACTION: f64 = 0.9;
/// Safety factor applied to the calibrated constant.
pub const TAIL_SAFETY: f64 = 1.1;
/// Upper end of the calibration grid in |z|.
pub const TAIL_CALIBRATION_RADIUS: f64 = 20.0;
const TAIL_CALIBRATION_POINTS: usize = 400;

/// Exponential envelope C·exp(−ν|z|^{1/(1−δ)}) along one ray, with ν set to
/// 0.9 of its supremum and C calibrated as 1.1 times the largest value of
/// |φ|·exp(ν|z|^{1/(1−δ)}) over a uniform grid of |z| ∈ [0, 20].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailBound {
    pub constant: f64,
    pub rate: f64,
    pub exponent: f64,
    pub arg: f64,
}

impl TailBound {
    pub fn calibrate(params: WrightParams, arg: f64) -> Result<Self> {
        Self::calibrate_on(params, arg, TAIL_CALIBRATION_RADIUS, TAIL_CALIBRATION_POINTS)
    }

    /// Calibration over `points + 1` equispaced moduli in `[0, radius]`.
    pub fn calibrate_on(params: WrightParams, arg: f64, radius: f64, points: usize) -> Result<Self> {
        let delta = params.delta();
        let probe = Complex64::from_polar(1.0, arg);
        if !in_decay_sector(delta, probe) {
            return Err(Error::SectorViolation { arg });
        }
        let rate = TAIL_RATE_FRACTION * decay_rate_sup(delta, arg);
        let exponent = 1.0 / (1.0 - delta);
        let w = Wright::new(params);
        let mut constant: f64 = 0.0;
        for k in 0..=points {
            let r = radius * k as f64 / points as f64;
            let v = w.eval(probe * r)?;
            let mag = v.value.norm() + v.abs_error_estimate;
            constant = constant.max(mag * (rate * r.powf(exponent)).exp());
        }
        Ok(Self { constant: TAIL_SAFETY * constant, rate, exponent, arg })
    }

    pub fn eval(&self, modulus: f64) -> f64 {
        self.constant * (-self.rate * modulus.powf(self.exponent)).exp()
    }

    /// Smallest modulus beyond which the bound stays below `level`.
    pub fn radius_for(&self, level: f64) -> f64 {
        if self.constant <= level {
            return 0.0;
        }
        ((self.constant / level).ln() / self.rate).powf(1.0 / self.exponent)
    }
}

/// Calibrated upper bound for |φ(ρ, μ; z)| inside the decay sector.
pub fn wright_tail_bound(params: WrightParams, z: Complex64) -> Result<f64> {
    if !in_decay_sector(params.delta(), z) {
        return Err(Error::SectorViolation { arg: z.arg() });
    }
    Ok(TailBound::calibrate(params, z.arg())?.eval(z.norm()))
}

/// Parameters (α, μ) of the two-parameter Mittag-Leffler function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    alpha: f64,
    mu: f64,
}

impl MLParams {
    pub fn new(alpha: f64, mu: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("Mittag-Leffler alpha = {alpha} must be positive")));
        }
        if !mu.is_finite() {
            return Err(Error::InvalidParameter(format!("Mittag-Leffler mu = {mu} must be finite")));
        }
        Ok(Self { alpha, mu })
    }

    /// One-parameter case E_α = E_{α,1}.
    pub fn single(alpha: f64) -> Result<Self> {
        Self::new(alpha, 1.0)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
}

const ML_CAP: usize = 4000;

/// Relative accuracy below which cancellation in the series is reported.
const ML_ACCURACY: f64 = 1e-10;
const ML_CANCELLATION_GUARD: f64 = 64.0;

/// E_{α,μ}(z) = Σ zⁿ/Γ(αn+μ) by direct summation with a geometric tail bound.
/// Arguments whose alternating series cancels below 1e-10 relative accuracy
/// give `NonConvergence`.
pub fn mittag_leffler(params: MLParams, z: f64) -> Result<f64> {
    let (a, mu) = (params.alpha, params.mu);
    if !z.is_finite() {
        return Err(Error::InvalidParameter(format!("Mittag-Leffler argument {z} is not finite")));
    }
    if z == 0.0 {
        return Ok(rgamma(mu));
    }
    let ln_z = z.abs().ln();
    let sign = z.signum();
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    for n in 0..ML_CAP {
        let x = a * n as f64 + mu;
        let term = ml_term(n, x, ln_z, sign);
        sum += term;
        abs_sum += term.abs();
        if x >= 2.0 {
            // Γ(x)/Γ(x+α) decreases for x ≥ 2, so the term ratio bound is monotone.
            let q = (ln_z + ln_gamma(x).0 - ln_gamma(x + a).0).exp();
            if q < 1.0 {
                let next = ml_term(n + 1, x + a, ln_z, sign).abs();
                let tail = next / (1.0 - q);
                if tail <= 1e-16 * sum.abs() || tail <= 1e-3 * f64::EPSILON * abs_sum || tail < 1e-300 {
                    if ML_CANCELLATION_GUARD * f64::EPSILON * abs_sum > ML_ACCURACY * sum.abs() {
                        return Err(Error::NonConvergence { terms: n + 1, modulus: z.abs() });
                    }
                    return Ok(sum);
                }
            }
        }
    }
    Err(Error::NonConvergence { terms: ML_CAP, modulus: z.abs() })
}

fn ml_term(n: usize, x: f64, ln_z: f64, sign: f64) -> f64 {
    match gamma::ln_rgamma(x) {
        None => 0.0,
        Some((l, s)) => {
            let mag = (l + n as f64 * ln_z).exp();
            let parity = if sign < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
            s * parity * mag
        }
    }
}

/// Values of E_{α,μ} on a list of arguments.
pub fn mittag_leffler_many(params: MLParams, zs: &[f64]) -> Result<Vec<f64>> {
    zs.iter().map(|&z| mittag_leffler(params, z)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_wright_at_origin() {
        let v = m_wright(1.0 / 3.0, Complex64::new(0.0, 0.0)).unwrap().value.re;
        assert!((v - 0.738_488_111_621_648_2).abs() < 1e-13);
        assert_eq!(f_wright(0.4, Complex64::new(0.0, 0.0)).unwrap().value.re, 0.0);
    }

    #[test]
    fn f_equals_nu_z_m() {
        for &nu in &[0.1, 0.5, 0.9] {
            for &x in &[0.5, 3.0, 9.0] {
                let z = Complex64::new(x, 0.0);
                let f = f_wright(nu, z).unwrap().value;
                let m = m_wright(nu, z).unwrap().value;
                assert!((f - m * z * nu).norm() < 1e-10, "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn mittag_leffler_special_cases() {
        let e1 = mittag_leffler(MLParams::single(1.0).unwrap(), 1.0).unwrap();
        assert!((e1 - core::f64::consts::E).abs() < 1e-14);
        let p = MLParams::new(0.7, 1.3).unwrap();
        assert!((mittag_leffler(p, 0.0).unwrap() - rgamma(1.3)).abs() < 1e-16);
        // E_{1/2}(z) = exp(z²)·erfc(−z).
        let h = MLParams::single(0.5).unwrap();
        for &z in &[0.3, 1.0, 2.0] {
            let exact = (z * z).exp() * libm::erfc(-z);
            assert!((mittag_leffler(h, z).unwrap() - exact).abs() < 1e-12 * exact);
        }
    }

    #[test]
    fn tail_bound_rejects_positive_axis_and_decays() {
        let p = WrightParams::new(-1.0 / 6.0, 0.5).unwrap();
        assert!(matches!(wright_tail_bound(p, Complex64::new(8.0, 0.0)), Err(Error::SectorViolation { .. })));
        let b = TailBound::calibrate(p, PI).unwrap();
        assert!(b.eval(10.0) > b.eval(20.0));
        let phi = wright_phi(p, Complex64::new(-8.0, 0.0)).unwrap().value.norm();
        assert!(b.eval(8.0) >= phi);
    }
}
