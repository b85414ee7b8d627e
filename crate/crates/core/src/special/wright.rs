//! Wright function φ(ρ, μ; z) = Σ zⁿ / (n! Γ(ρn + μ)) for −1 < ρ < 0.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::contour;
use super::gamma::{ln_gamma, ln_rgamma, ln_rgamma_envelope, rgamma};
use crate::error::{Error, Result};

/// Default relative tolerance of the series.
pub const SERIES_TOL: f64 = 1e-12;
/// Hard cap on the number of series terms.
pub const SERIES_CAP: usize = 500;

/// Parameters of a Wright function with negative first parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WrightParams {
    rho: f64,
    mu: f64,
}

impl WrightParams {
    pub fn new(rho: f64, mu: f64) -> Result<Self> {
        if !(rho > -1.0 && rho < 0.0) {
            return Err(Error::InvalidParameter(format!("rho = {rho} must lie in (-1, 0)")));
        }
        if !mu.is_finite() {
            return Err(Error::InvalidParameter(format!("mu = {mu} must be finite")));
        }
        Ok(Self { rho, mu })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// δ = −ρ.
    pub fn delta(&self) -> f64 {
        -self.rho
    }

    /// Same ρ, μ shifted by `shift`.
    pub fn shifted(&self, shift: f64) -> Self {
        Self { rho: self.rho, mu: self.mu + shift }
    }
}

/// A function value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub terms_used: usize,
}

/// Coefficient 1/(n! Γ(ρn+μ)) in magnitude/sign form, plus the envelope
/// that ignores the zeros of 1/Γ.
#[derive(Debug, Clone, Copy)]
struct Coefficient {
    // value = sign·exp(ln_abs); ln_abs = −∞ encodes an exact zero.
    ln_abs: f64,
    sign: f64,
    ln_env: f64,
    direct: f64,
}

fn coefficient(rho: f64, mu: f64, n: usize) -> Coefficient {
    let x = rho * n as f64 + mu;
    let ln_fact = ln_gamma(n as f64 + 1.0).0;
    let ln_env = ln_rgamma_envelope(x) - ln_fact;
    match ln_rgamma(x) {
        None => Coefficient { ln_abs: f64::NEG_INFINITY, sign: 0.0, ln_env, direct: 0.0 },
        Some((l, s)) => {
            let ln_abs = l - ln_fact;
            let direct = if ln_abs > -700.0 && ln_abs < 700.0 {
                if n <= 170 && (1.0 - x) < 170.0 && x < 170.0 {
                    rgamma(x) / factorial(n)
                } else {
                    s * ln_abs.exp()
                }
            } else {
                0.0
            };
            Coefficient { ln_abs, sign: s, ln_env, direct }
        }
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Sum the power series with a rigorous geometric tail bound built from the
/// coefficient envelope.
fn sum_series<C>(rho: f64, mu: f64, z: Complex64, tol: f64, cap: usize, mut coef: C) -> Result<EvalResult>
where
    C: FnMut(usize) -> Coefficient,
{
    let r = z.norm();
    if r == 0.0 {
        let c = coef(0);
        return Ok(EvalResult { value: Complex64::new(c.direct, 0.0), abs_error_estimate: 0.0, terms_used: 1 });
    }
    let ln_r = r.ln();
    let unit = z / r;
    let delta = -rho;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut phase = Complex64::new(1.0, 0.0);
    let mut c = coef(0);
    for n in 0..cap {
        let ln_term = c.ln_abs + n as f64 * ln_r;
        if c.sign != 0.0 && ln_term > -745.0 {
            let direct = c.direct.abs() * r.powi(n as i32);
            let mag = if c.direct != 0.0 && direct.is_normal() { direct } else { ln_term.exp() };
            sum += phase * (c.sign * mag);
            abs_sum += mag;
        }
        phase *= unit;
        let k = n + 1;
        let next = coef(k);
        // Tail bound after term n: the envelope ratio is bounded by
        // q_k = |z|·(1 − x_k)^δ/(k+1) for x_k = ρk + μ < 1/2, which decreases in k.
        let xk = rho * k as f64 + mu;
        if xk < 0.5 {
            let q = r * (1.0 - xk).powf(delta) / (k as f64 + 1.0);
            let q_next = r * (1.0 - xk + delta).powf(delta) / (k as f64 + 2.0);
            if q < 1.0 && q_next <= q {
                let tail = (next.ln_env + k as f64 * ln_r).exp() / (1.0 - q);
                let rounding = 4.0 * f64::EPSILON * abs_sum;
                let scale = sum.norm();
                if tail <= tol * scale || tail <= f64::EPSILON * 1e-2 * abs_sum || tail < 1e-300 {
                    return Ok(EvalResult { value: sum, abs_error_estimate: tail + rounding, terms_used: n + 1 });
                }
            }
        }
        c = next;
    }
    Err(Error::NonConvergence { terms: cap, modulus: r })
}

/// Series evaluation of φ(ρ, μ; z) with the default tolerance and cap.
///
/// `1/Γ` is evaluated as an entire function, so terms with ρn+μ at a
/// nonpositive integer contribute exactly zero.
pub fn wright_phi(params: WrightParams, z: Complex64) -> Result<EvalResult> {
    wright_phi_with(params, z, SERIES_TOL, SERIES_CAP)
}

/// Series evaluation with explicit tolerance and term cap.
pub fn wright_phi_with(params: WrightParams, z: Complex64, tol: f64, cap: usize) -> Result<EvalResult> {
    let (rho, mu) = (params.rho, params.mu);
    sum_series(rho, mu, z, tol, cap, |n| coefficient(rho, mu, n))
}

/// Growth rate σ of the coefficient envelope: Σ|cₙ||z|ⁿ ≈ exp(σ|z|^{1/(1−δ)}).
pub(crate) fn envelope_rate(delta: f64) -> f64 {
    (1.0 - delta) * delta.powf(delta / (1.0 - delta))
}

/// True when |arg z| lies in the sector where φ(−δ, μ; z) decays,
/// (1+δ)π/2 < |arg z| ≤ π.
pub fn in_decay_sector(delta: f64, z: Complex64) -> bool {
    z.arg().abs() > (1.0 + delta) * PI / 2.0
}

/// Reusable evaluator of φ(ρ, μ; ·) for one parameter pair.
///
/// Uses the power series (with cached coefficients) where its rounding error
/// is small, and switches to a contour integral inside the decay sector once
/// the series would lose more than about three digits to cancellation.
#[derive(Debug, Clone)]
pub struct Wright {
    params: WrightParams,
    coefficients: Vec<Coefficient>,
    series_radius: f64,
    tol: f64,
}

impl Wright {
    pub fn new(params: WrightParams) -> Self {
        let (rho, mu) = (params.rho, params.mu);
        let coefficients = (0..SERIES_CAP).map(|n| coefficient(rho, mu, n)).collect();
        let delta = -rho;
        // σ|z|^{1/(1−δ)} ≤ ln(1e3): rounding stays near 1e-13 in absolute terms.
        let series_radius = (1e3f64.ln() / envelope_rate(delta)).powf(1.0 - delta);
        Self { params, coefficients, series_radius, tol: SERIES_TOL }
    }

    pub fn params(&self) -> WrightParams {
        self.params
    }

    /// Radius below which the series is used unconditionally.
    pub fn series_radius(&self) -> f64 {
        self.series_radius
    }

    pub fn series(&self, z: Complex64) -> Result<EvalResult> {
        let (rho, mu) = (self.params.rho, self.params.mu);
        sum_series(rho, mu, z, self.tol, SERIES_CAP, |n| {
            self.coefficients.get(n).copied().unwrap_or_else(|| coefficient(rho, mu, n))
        })
    }

    pub fn eval(&self, z: Complex64) -> Result<EvalResult> {
        let delta = self.params.delta();
        let sector = in_decay_sector(delta, z);
        if z.norm() <= self.series_radius || !sector {
            match self.series(z) {
                Ok(r) => return Ok(r),
                Err(e) if !sector => return Err(e),
                Err(_) => {}
            }
        }
        contour::wright_phi_rays(self.params, z)
    }

    /// Convenience: value only.
    pub fn value(&self, z: Complex64) -> Result<Complex64> {
        self.eval(z).map(|r| r.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rho: f64, mu: f64) -> WrightParams {
        WrightParams::new(rho, mu).unwrap()
    }

    #[test]
    fn value_at_origin_is_reciprocal_gamma() {
        let r = wright_phi(p(-1.0 / 6.0, 1.0 / 3.0), Complex64::new(0.0, 0.0)).unwrap();
        assert!((r.value.re - 0.373_282_173_907_395_1).abs() < 1e-14);
        let r = wright_phi(p(-1.0 / 6.0, 0.0), Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(r.value.re, 0.0);
    }

    #[test]
    fn gaussian_case_of_m_wright() {
        // φ(−1/2, 1/2; −z) = exp(−z²/4)/√π.
        for &x in &[0.3, 1.0, 2.5, 4.0] {
            let r = wright_phi(p(-0.5, 0.5), Complex64::new(-x, 0.0)).unwrap();
            let exact = (-x * x / 4.0).exp() / PI.sqrt();
            assert!((r.value.re - exact).abs() < 1e-12, "x={x}: {} vs {exact}", r.value.re);
            assert!(r.value.im.abs() < 1e-16);
        }
    }

    #[test]
    fn rejects_invalid_rho() {
        assert!(WrightParams::new(0.2, 1.0).is_err());
        assert!(WrightParams::new(-1.0, 1.0).is_err());
    }

    #[test]
    fn non_convergence_reported_beyond_series_regime() {
        let r = wright_phi(p(-0.9, 0.1), Complex64::new(-10.0, 0.0));
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn evaluator_matches_series_inside_radius() {
        let w = Wright::new(p(-0.25, 0.5));
        for &(re, im) in &[(-2.0, 0.0), (1.0, 1.0), (-1.0, 3.0)] {
            let z = Complex64::new(re, im);
            let a = w.eval(z).unwrap().value;
            let b = wright_phi(p(-0.25, 0.5), z).unwrap().value;
            assert!((a - b).norm() < 1e-14);
        }
    }
}
