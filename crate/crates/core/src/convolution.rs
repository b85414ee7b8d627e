//! Product integration of time convolutions ∫₀ᵗ K(s) τ(t − s) ds with a
//! weakly singular or rapidly varying kernel K and a density τ that is
//! piecewise linear on a uniform grid.
//!
//! Per cell [ih, (i+1)h] the kernel enters only through the moments
//! A_i = ∫ K(s) ds and B_i = ∫ K(s)(s − ih)/h ds, so
//!
//! ```text
//! ∫₀^{t_n} K(s) τ(t_n − s) ds = Σ_{i<n} (A_i − B_i) τ_{n−i} + B_i τ_{n−i−1}.
//! ```

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fractional::TimeGrid;
use crate::quad::{integrate, QuadConfig};

/// Behaviour of the kernel near s = 0, which selects the first-cell rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelShape {
    /// K(s) = c·s^p exactly, p > −1; all moments in closed form.
    Power { coeff: f64, exponent: f64 },
    /// K(s) = s^p·Q(s) with Q bounded near 0 and p > −1; the first cell is
    /// integrated in v = (s/h)^{p+1}, which removes the singularity.
    Singular { exponent: f64 },
    /// K(s) vanishes for s below `cutoff` and may vary rapidly above it; the
    /// first cell is integrated in ln s.
    Vanishing { cutoff: f64 },
}

/// Quadrature settings for kernel moments.
pub fn moment_config() -> QuadConfig {
    QuadConfig::new(1e-15, 1e-12).with_max_intervals(4000)
}

fn power_moments(coeff: f64, p: f64, lo: f64, hi: f64) -> (f64, f64) {
    let h = hi - lo;
    let e1 = p + 1.0;
    let e2 = p + 2.0;
    let a = coeff * (hi.powf(e1) - lo.powf(e1)) / e1;
    // ∫ s^p (s − lo) ds = (hi^{p+2} − lo^{p+2})/(p+2) − lo·(hi^{p+1} − lo^{p+1})/(p+1)
    let b = coeff * ((hi.powf(e2) - lo.powf(e2)) / e2 - lo * (hi.powf(e1) - lo.powf(e1)) / e1) / h;
    (a, b)
}

/// Moments (∫ K, ∫ K·(s − lo)/(hi − lo)) of one cell.
pub fn cell_moments<K>(k: &K, shape: KernelShape, lo: f64, hi: f64, cfg: QuadConfig) -> Result<(f64, f64)>
where
    K: Fn(f64) -> f64,
{
    let h = hi - lo;
    match shape {
        KernelShape::Power { coeff, exponent } => {
            if exponent <= -1.0 {
                return Err(Error::InvalidParameter(format!("power kernel exponent {exponent} is not integrable")));
            }
            Ok(power_moments(coeff, exponent, lo, hi))
        }
        KernelShape::Singular { exponent } if lo == 0.0 => {
            if exponent <= -1.0 {
                return Err(Error::InvalidParameter(format!("kernel exponent {exponent} is not integrable")));
            }
            let e1 = exponent + 1.0;
            let q = integrate(
                |v| {
                    let s = h * v.powf(1.0 / e1);
                    let reg = k(s) * s.powf(-exponent);
                    [reg, reg * s / h]
                },
                0.0,
                1.0,
                cfg,
            )?;
            let scale = h.powf(e1) / e1;
            Ok((scale * q.value[0], scale * q.value[1]))
        }
        KernelShape::Vanishing { cutoff } if lo < cutoff => {
            let start = cutoff.max(lo);
            if start >= hi {
                return Ok((0.0, 0.0));
            }
            let q = integrate(
                |u| {
                    let s = u.exp();
                    let v = k(s) * s;
                    [v, v * (s - lo) / h]
                },
                start.ln(),
                hi.ln(),
                cfg,
            )?;
            Ok((q.value[0], q.value[1]))
        }
        _ => {
            let q = integrate(|s| {
                let v = k(s);
                [v, v * (s - lo) / h]
            }, lo, hi, cfg)?;
            Ok((q.value[0], q.value[1]))
        }
    }
}

/// Moment tables of one kernel on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvolutionWeights {
    step: f64,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl ConvolutionWeights {
    /// Tables for cells 0..n of the grid.
    pub fn new<K>(k: K, shape: KernelShape, grid: TimeGrid) -> Result<Self>
    where
        K: Fn(f64) -> f64,
    {
        Self::with_config(k, shape, grid, moment_config())
    }

    pub fn with_config<K>(k: K, shape: KernelShape, grid: TimeGrid, cfg: QuadConfig) -> Result<Self>
    where
        K: Fn(f64) -> f64,
    {
        let h = grid.step();
        let n = grid.n_steps();
        let mut a = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        for i in 0..n {
            let lo = i as f64 * h;
            let (ai, bi) = cell_moments(&k, shape, lo, lo + h, cfg)?;
            a.push(ai);
            b.push(bi);
        }
        Ok(Self { step: h, a, b })
    }

    /// Tables from precomputed moments.
    pub fn from_moments(step: f64, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::InvalidParameter("moment tables differ in length".into()));
        }
        Ok(Self { step, a, b })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Tables of the kernel c·K.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            step: self.step,
            a: self.a.iter().map(|v| c * v).collect(),
            b: self.b.iter().map(|v| c * v).collect(),
        }
    }

    pub fn cells(&self) -> usize {
        self.a.len()
    }

    pub fn moments(&self) -> (&[f64], &[f64]) {
        (&self.a, &self.b)
    }

    /// Weight multiplying τ(t_n) in the value at t_n.
    pub fn self_weight(&self) -> f64 {
        self.a[0] - self.b[0]
    }

    /// ∫₀^{t_n} K(s) τ(t_n − s) ds for nodal density values `tau`.
    pub fn apply(&self, tau: &[f64], n: usize) -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            s += (self.a[i] - self.b[i]) * tau[n - i] + self.b[i] * tau[n - i - 1];
        }
        s
    }

    /// Same as [`apply`](Self::apply) without the τ(t_n) term.
    pub fn apply_history(&self, tau: &[f64], n: usize) -> f64 {
        self.apply(tau, n) - self.self_weight() * tau[n]
    }

    /// Values at every node (0 at node 0).
    pub fn apply_all(&self, tau: &[f64]) -> Vec<f64> {
        (0..tau.len()).map(|n| if n == 0 { 0.0 } else { self.apply(tau, n) }).collect()
    }
}

/// ∫₀ᵗ K(s) τ(t − s) ds at an arbitrary t > 0 for a density given as a
/// function; cells of width `h` are integrated with the same first-cell rule.
pub fn convolve_at<K, T>(k: K, shape: KernelShape, tau: T, t: f64, h: f64) -> Result<f64>
where
    K: Fn(f64) -> f64,
    T: Fn(f64) -> f64,
{
    if !(t > 0.0) {
        return Ok(0.0);
    }
    let cfg = moment_config();
    let cells = ((t / h).ceil() as usize).max(1);
    let width = t / cells as f64;
    let mut total = 0.0;
    for i in 0..cells {
        let lo = i as f64 * width;
        let hi = if i + 1 == cells { t } else { lo + width };
        let kt = |s: f64| k(s) * tau(t - s);
        let v = match shape {
            KernelShape::Power { coeff, exponent } => {
                let pk = |s: f64| coeff * s.powf(exponent) * tau(t - s);
                if i == 0 {
                    let e1 = exponent + 1.0;
                    let q = integrate(|v| [coeff * tau(t - hi * v.powf(1.0 / e1))], 0.0, 1.0, cfg)?;
                    q.value[0] * hi.powf(e1) / e1
                } else {
                    integrate(|s| [pk(s)], lo, hi, cfg)?.value[0]
                }
            }
            _ => {
                let (a, _) = cell_moments(&kt, shape, lo, hi, cfg)?;
                a
            }
        };
        total += v;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;

    #[test]
    fn power_weights_integrate_linear_density_exactly() {
        let g = TimeGrid::new(1.0, 8).unwrap();
        let p = -0.6;
        let w = ConvolutionWeights::new(|s| s.powf(p), KernelShape::Power { coeff: 1.0, exponent: p }, g).unwrap();
        let tau: Vec<f64> = g.nodes().iter().map(|t| 2.0 + 3.0 * t).collect();
        // ∫₀¹ s^p (2 + 3(1 − s)) ds = 5/(p+1) − 3/(p+2)
        let exact = 5.0 / (p + 1.0) - 3.0 / (p + 2.0);
        assert!((w.apply(&tau, 8) - exact).abs() < 1e-13);
    }

    #[test]
    fn singular_shape_matches_power_moments() {
        let g = TimeGrid::new(2.0, 5).unwrap();
        let p = -0.7;
        let a = ConvolutionWeights::new(|s| 1.5 * s.powf(p), KernelShape::Singular { exponent: p }, g).unwrap();
        let b = ConvolutionWeights::new(|s| 1.5 * s.powf(p), KernelShape::Power { coeff: 1.5, exponent: p }, g).unwrap();
        for i in 0..5 {
            assert!((a.a[i] - b.a[i]).abs() < 1e-12 && (a.b[i] - b.b[i]).abs() < 1e-12, "cell {i}");
        }
    }

    #[test]
    fn vanishing_shape_handles_essential_zero() {
        // ∫₀¹ exp(−1/s) s^{-2} ds = e^{-1}
        let g = TimeGrid::new(1.0, 4).unwrap();
        let w = ConvolutionWeights::new(|s| (-1.0 / s).exp() / (s * s), KernelShape::Vanishing { cutoff: 1e-3 }, g).unwrap();
        let ones = alloc::vec![1.0; 5];
        assert!((w.apply(&ones, 4) - (-1.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn convolve_at_matches_beta_integral() {
        // ∫₀ᵗ s^{-1/2} (t − s) ds = (4/3) t^{3/2}
        let t = 0.77;
        let v = convolve_at(|s| s.powf(-0.5), KernelShape::Power { coeff: 1.0, exponent: -0.5 }, |r| r, t, 0.1).unwrap();
        assert!((v - 4.0 / 3.0 * t.powf(1.5)).abs() < 1e-12);
        let v = convolve_at(|s| s.powf(-0.5), KernelShape::Singular { exponent: -0.5 }, |r| r * r, t, 0.1).unwrap();
        let exact = gamma(0.5) * 2.0 / gamma(3.5) * t.powf(2.5);
        assert!((v - exact).abs() < 1e-11);
    }
}
