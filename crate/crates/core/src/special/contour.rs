//! Contour-integral evaluation of the Wright function,
//! φ(−δ, μ; z) = (1/2πi) ∫ exp(σ + zσ^δ) σ^{−μ} dσ over a loop that starts and
//! ends at −∞ and encircles the origin counterclockwise.

use alloc::format;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::wright::{in_decay_sector, EvalResult, WrightParams};
use crate::error::{Error, Result};
use crate::quad::{integrate, GaussLegendre, QuadConfig};

/// exp(σ + zσ^δ − μ ln σ) with σ = r·e^{iψ} on the principal branch.
fn integrand(delta: f64, mu: f64, z: Complex64, ln_r: f64, psi: f64) -> Complex64 {
    let ln_sigma = Complex64::new(ln_r, psi);
    let sigma = ln_sigma.exp();
    let sigma_d = (ln_sigma * delta).exp();
    (sigma + z * sigma_d - ln_sigma * mu).exp()
}

/// Two-ray contour tailored to the decay sector of φ, used as the production
/// evaluator for large |z| there.
///
/// The rays leave a small arc of radius r₀ at angles ±θ, with θ chosen so that
/// both Re σ and Re(zσ^δ) are negative along the whole contour. The integrand
/// then decays monotonically along each ray and no exponentially large
/// intermediate values appear.
pub fn wright_phi_rays(params: WrightParams, z: Complex64) -> Result<EvalResult> {
    let delta = params.delta();
    let mu = params.mu();
    if !in_decay_sector(delta, z) {
        return Err(Error::SectorViolation { arg: z.arg() });
    }
    let arg = z.arg().abs();
    let theta_max = PI.min((arg - PI / 2.0) / delta).min((1.5 * PI - arg) / delta);
    let theta = 0.5 * (PI / 2.0 + theta_max);
    let modulus = z.norm();
    // |z|·r₀^δ = 1 balances the arc against the start of the rays.
    let r0 = if modulus > 0.0 { modulus.powf(-1.0 / delta).clamp(1e-200, 1.0) } else { 1.0 };
    let ln_r0 = r0.ln();
    let cos_t = theta.cos().abs().max(1e-3);
    let ln_r1 = (80.0 / cos_t + 2.0 * mu.abs() + 10.0).ln();
    let cfg = QuadConfig::new(1e-18, 1e-13).with_max_intervals(4000);

    let rays = integrate(
        |ln_r| {
            let r = ln_r.exp();
            let up = integrand(delta, mu, z, ln_r, theta) * Complex64::from_polar(r, theta);
            let low = integrand(delta, mu, z, ln_r, -theta) * Complex64::from_polar(r, -theta);
            let v = up - low;
            [v.re, v.im, up.norm() + low.norm()]
        },
        ln_r0,
        ln_r1,
        cfg,
    )?;
    let arc = integrate(
        |psi| {
            let v = integrand(delta, mu, z, ln_r0, psi) * Complex64::new(0.0, 1.0) * Complex64::from_polar(r0, psi);
            [v.re, v.im, v.norm()]
        },
        -theta,
        theta,
        cfg,
    )?;
    let total = Complex64::new(rays.value[0] + arc.value[0], rays.value[1] + arc.value[1]);
    let value = total / Complex64::new(0.0, 2.0 * PI);
    let abs_mass = (rays.value[2] + arc.value[2]) / (2.0 * PI);
    let err = (rays.error + arc.error) / (2.0 * PI) + 8.0 * f64::EPSILON * abs_mass;
    Ok(EvalResult { value, abs_error_estimate: err, terms_used: rays.evaluations + arc.evaluations })
}

const HANKEL_EPS: f64 = 0.1;
const HANKEL_NODES: usize = 32;
const HANKEL_MAX_PANELS: usize = 2048;

/// Hankel-loop evaluation of φ(ρ, μ; z) on rays at ±(π − 0.1) joined by an arc
/// of radius max(1, |z|^{1/(1+ρ)}), with Gauss–Legendre panels doubled until
/// two successive sums agree. Intended as an independent oracle for
/// moderate |z|.
pub fn wright_phi_hankel(params: WrightParams, z: Complex64) -> Result<EvalResult> {
    let delta = params.delta();
    let mu = params.mu();
    let angle = PI - HANKEL_EPS;
    let radius = 1f64.max(z.norm().powf(1.0 / (1.0 - delta)));
    let ln_radius = radius.ln();

    // Find where the ray integrand is negligible against its peak.
    let ray_abs = |r: f64| {
        let a = integrand(delta, mu, z, r.ln(), angle).norm();
        let b = integrand(delta, mu, z, r.ln(), -angle).norm();
        a.max(b)
    };
    let mut peak = ray_abs(radius);
    let mut end = radius;
    for _ in 0..200 {
        end = end * 1.25 + 1.0;
        let v = ray_abs(end);
        peak = peak.max(v);
        if v < 1e-20 * peak.max(1e-300) || v < 1e-300 {
            break;
        }
    }

    let gl = GaussLegendre::new(HANKEL_NODES);
    let ray_fn = |r: f64| {
        let up = integrand(delta, mu, z, r.ln(), angle) * Complex64::from_polar(1.0, angle);
        let low = integrand(delta, mu, z, r.ln(), -angle) * Complex64::from_polar(1.0, -angle);
        let v = up - low;
        [v.re, v.im, up.norm() + low.norm()]
    };
    let arc_fn = |psi: f64| {
        let v = integrand(delta, mu, z, ln_radius, psi) * Complex64::new(0.0, 1.0) * Complex64::from_polar(radius, psi);
        [v.re, v.im, v.norm()]
    };
    let (ray, ray_err) = doubled(&gl, ray_fn, radius, end)?;
    let (arc, arc_err) = doubled(&gl, arc_fn, -angle, angle)?;
    let total = Complex64::new(ray[0] + arc[0], ray[1] + arc[1]) / Complex64::new(0.0, 2.0 * PI);
    let abs_mass = (ray[2] + arc[2]) / (2.0 * PI);
    let err = (ray_err + arc_err) / (2.0 * PI) + 16.0 * f64::EPSILON * abs_mass;
    Ok(EvalResult { value: total, abs_error_estimate: err, terms_used: HANKEL_NODES })
}

fn doubled<F>(gl: &GaussLegendre, mut f: F, a: f64, b: f64) -> Result<([f64; 3], f64)>
where
    F: FnMut(f64) -> [f64; 3],
{
    let mut panels = 4;
    let mut prev = gl.composite(&mut f, a, b, panels);
    while panels < HANKEL_MAX_PANELS {
        panels *= 2;
        let next = gl.composite(&mut f, a, b, panels);
        let diff = Complex64::new(next[0] - prev[0], next[1] - prev[1]).norm();
        let scale = next[2];
        if diff <= 1e-14 * scale.max(1e-300) + 1e-300 {
            return Ok((next, diff));
        }
        prev = next;
    }
    Err(Error::QuadratureFailure(format!("Hankel panels exhausted on [{a}, {b}]")))
}

#[cfg(test)]
mod tests {
    use super::super::wright::wright_phi;
    use super::*;

    #[test]
    fn hankel_reproduces_reciprocal_gamma() {
        let p = WrightParams::new(-1.0 / 6.0, 1.0 / 3.0).unwrap();
        let r = wright_phi_hankel(p, Complex64::new(0.0, 0.0)).unwrap();
        assert!((r.value.re - 0.373_282_173_907_395_1).abs() < 1e-12, "{:?}", r);
    }

    #[test]
    fn hankel_matches_series() {
        let p = WrightParams::new(-0.25, 0.5).unwrap();
        for &(re, im) in &[(-2.0, 0.0), (1.5, 0.5), (-4.0, 3.0)] {
            let z = Complex64::new(re, im);
            let h = wright_phi_hankel(p, z).unwrap().value;
            let s = wright_phi(p, z).unwrap().value;
            assert!((h - s).norm() < 1e-11, "{z}: {h} vs {s}");
        }
    }

    #[test]
    fn rays_match_series_in_sector() {
        for &(rho, mu) in &[(-1.0 / 6.0, 0.0), (-0.3, 0.7), (-0.1, 1.2)] {
            let p = WrightParams::new(rho, mu).unwrap();
            for &(m, a) in &[(3.0, PI), (5.0, 2.0 * PI / 3.0), (4.0, -0.9 * PI)] {
                let z = Complex64::from_polar(m, a);
                let r = wright_phi_rays(p, z).unwrap();
                let s = wright_phi(p, z).unwrap().value;
                assert!((r.value - s).norm() < 1e-12, "rho={rho} mu={mu} z={z}: {} vs {s}", r.value);
            }
        }
    }

    #[test]
    fn rays_reject_points_outside_sector() {
        let p = WrightParams::new(-0.25, 0.5).unwrap();
        assert!(matches!(wright_phi_rays(p, Complex64::new(3.0, 0.0)), Err(Error::SectorViolation { .. })));
    }
}
