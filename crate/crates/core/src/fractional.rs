//! Caputo derivative (L1 scheme) and Riemann-Liouville integral (product
//! trapezoid) of functions sampled on a uniform time grid.

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::kernels::FractionalOrder;
use crate::special::{gamma, rgamma};

/// Uniform grid t_k = k·T/N, k = 0..=N, on [0, T].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_max: f64,
    n_steps: usize,
}

impl TimeGrid {
    pub fn new(t_max: f64, n_steps: usize) -> Result<Self> {
        if !(t_max > 0.0 && t_max.is_finite()) {
            return Err(Error::InvalidParameter(format!("time horizon must be positive, got {t_max}")));
        }
        if n_steps < 2 {
            return Err(Error::InvalidParameter(format!("need at least 2 time steps, got {n_steps}")));
        }
        Ok(Self { t_max, n_steps })
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn step(&self) -> f64 {
        self.t_max / self.n_steps as f64
    }

    pub fn node(&self, k: usize) -> f64 {
        if k == self.n_steps {
            self.t_max
        } else {
            k as f64 * self.step()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.n_steps).map(|k| self.node(k)).collect()
    }

    pub fn len(&self) -> usize {
        self.n_steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid with twice as many steps on the same horizon.
    pub fn refined(&self) -> Self {
        Self { t_max: self.t_max, n_steps: 2 * self.n_steps }
    }
}

/// Samples of a real function at every node of a [`TimeGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: TimeGrid,
    values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(grid: TimeGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn<F: FnMut(f64) -> f64>(grid: TimeGrid, mut f: F) -> Self {
        let values = (0..grid.len()).map(|k| f(grid.node(k))).collect();
        Self { grid, values }
    }

    pub fn zeros(grid: TimeGrid) -> Self {
        Self { grid, values: alloc::vec![0.0; grid.len()] }
    }

    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Piecewise-linear interpolation; clamps outside [0, T].
    pub fn interpolate(&self, t: f64) -> f64 {
        let h = self.grid.step();
        let n = self.grid.n_steps;
        if t <= 0.0 {
            return self.values[0];
        }
        if t >= self.grid.t_max {
            return self.values[n];
        }
        let u = t / h;
        let k = (u.floor() as usize).min(n - 1);
        let w = u - k as f64;
        self.values[k] * (1.0 - w) + self.values[k + 1] * w
    }

    /// Sup norm of the samples.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn map<F: FnMut(f64) -> f64>(&self, f: F) -> Self {
        Self { grid: self.grid, values: self.values.iter().copied().map(f).collect() }
    }

    /// Pointwise `self + c·other` on the same grid.
    pub fn axpy(&self, c: f64, other: &Self) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::InvalidParameter("sampled functions live on different grids".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + c * b).collect();
        Ok(Self { grid: self.grid, values })
    }
}

/// L1 weights b_k = (k+1)^{1−ν} − k^{1−ν}, k = 0..n.
pub fn l1_weights(nu: f64, n: usize) -> Vec<f64> {
    let e = 1.0 - nu;
    (0..n).map(|k| ((k + 1) as f64).powf(e) - (k as f64).powf(e)).collect()
}

/// L1 Caputo derivative of order ν ∈ (0, 1) of samples with step `h`.
/// The value at node 0 is 0.
pub fn l1_caputo(values: &[f64], h: f64, nu: f64) -> Vec<f64> {
    let n = values.len();
    let b = l1_weights(nu, n);
    let scale = h.powf(-nu) * rgamma(2.0 - nu);
    let diffs: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let mut out = alloc::vec![0.0; n];
    for (k, o) in out.iter_mut().enumerate().skip(1) {
        let mut s = 0.0;
        for j in 0..k {
            s += b[k - j - 1] * diffs[j];
        }
        *o = scale * s;
    }
    out
}

/// Product-trapezoid Riemann-Liouville integral of order ν > 0 of samples
/// with step `h`: the singular factor is integrated exactly against the
/// piecewise-linear interpolant.
pub fn rl_product_trapezoid(values: &[f64], h: f64, nu: f64) -> Vec<f64> {
    let n = values.len();
    let e = nu + 1.0;
    let p: Vec<f64> = (0..n + 1).map(|k| (k as f64).powf(e)).collect();
    let scale = h.powf(nu) / gamma(nu + 2.0);
    let mut out = alloc::vec![0.0; n];
    for (k, o) in out.iter_mut().enumerate().skip(1) {
        let kf = k as f64;
        let mut s = (p[k - 1] - (kf - 1.0 - nu) * kf.powf(nu)) * values[0];
        for j in 1..k {
            s += (p[k - j + 1] - 2.0 * p[k - j] + p[k - j - 1]) * values[j];
        }
        s += values[k];
        *o = scale * s;
    }
    out
}

/// L1 Caputo derivative of a sampled function.
pub fn caputo_derivative(f: &SampledFunction, alpha: FractionalOrder) -> SampledFunction {
    let values = l1_caputo(&f.values, f.grid.step(), alpha.alpha());
    SampledFunction { grid: f.grid, values }
}

/// Riemann-Liouville fractional integral of a sampled function.
pub fn rl_integral(f: &SampledFunction, alpha: FractionalOrder) -> SampledFunction {
    let values = rl_product_trapezoid(&f.values, f.grid.step(), alpha.alpha());
    SampledFunction { grid: f.grid, values }
}

/// Exact Caputo derivative of t^β: Γ(β+1)/Γ(β+1−α)·t^{β−α}.
pub fn caputo_power_rule(beta: f64, alpha: FractionalOrder, t: f64) -> f64 {
    let a = alpha.alpha();
    gamma(beta + 1.0) * rgamma(beta + 1.0 - a) * t.powf(beta - a)
}

/// Exact Riemann-Liouville integral of t^β: Γ(β+1)/Γ(β+1+ν)·t^{β+ν}.
pub fn rl_power_rule(beta: f64, nu: f64, t: f64) -> f64 {
    gamma(beta + 1.0) * rgamma(beta + 1.0 + nu) * t.powf(beta + nu)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(a: f64) -> FractionalOrder {
        FractionalOrder::new(a).unwrap()
    }

    #[test]
    fn l1_exact_for_linear_functions() {
        let g = TimeGrid::new(1.0, 16).unwrap();
        let f = SampledFunction::from_fn(g, |t| t);
        let d = caputo_derivative(&f, order(0.5));
        assert!((d.values()[16] - core::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-13);
        let c = caputo_derivative(&SampledFunction::from_fn(g, |_| 3.0), order(0.4));
        assert!(c.values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn rl_exact_for_linear_functions() {
        let g = TimeGrid::new(1.0, 10).unwrap();
        let one = rl_integral(&SampledFunction::from_fn(g, |_| 1.0), order(0.3));
        assert!((one.values()[10] - rl_power_rule(0.0, 0.3, 1.0)).abs() < 1e-14);
        let lin = rl_integral(&SampledFunction::from_fn(g, |t| t), order(0.5));
        assert!((lin.values()[10] - 0.752_252_778_063_675).abs() < 1e-13);
    }

    #[test]
    fn power_rule_special_values() {
        let a = order(0.5);
        assert!((caputo_power_rule(1.0, a, 1.0) - core::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-14);
        assert!((caputo_power_rule(2.0, a, 1.0) - 1.504_505_556_127_350_1).abs() < 1e-14);
        assert!((caputo_power_rule(0.5, a, 2.0) - gamma(1.5)).abs() < 1e-14);
        assert!((caputo_power_rule(2.0, order(1.0 - 1e-9), 1.0) - 2.0).abs() < 1e-7);
    }

    #[test]
    fn interpolation_is_piecewise_linear() {
        let g = TimeGrid::new(2.0, 4).unwrap();
        let f = SampledFunction::from_fn(g, |t| 3.0 * t - 1.0);
        assert!((f.interpolate(0.77) - 1.31).abs() < 1e-14);
        assert!(SampledFunction::new(g, alloc::vec![0.0; 3]).is_err());
    }
}
