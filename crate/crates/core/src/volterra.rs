//! Second-kind Volterra systems
//!
//! ```text
//! A Φ(t) = ∫₀ᵗ K(t − τ) Φ(τ) dτ + F(t)
//! ```
//!
//! with a constant invertible instantaneous matrix A and a possibly weakly
//! singular d×d kernel, solved by product-integration time marching or by
//! Picard iteration on the same discretization.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::convolution::{ConvolutionWeights, KernelShape};
use crate::error::{Error, Result};
use crate::fractional::TimeGrid;

/// Values beyond this magnitude abort the solve.
pub const OVERFLOW_GUARD: f64 = 1e100;

/// Dense row-major d×d matrix solve by Gaussian elimination with partial
/// pivoting.
pub fn solve_dense(a: &[f64], b: &[f64], d: usize) -> Result<Vec<f64>> {
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    let scale = a.iter().fold(0.0_f64, |s, v| s.max(v.abs()));
    for col in 0..d {
        let piv = (col..d)
            .max_by(|&i, &j| m[i * d + col].abs().partial_cmp(&m[j * d + col].abs()).unwrap_or(core::cmp::Ordering::Equal))
            .unwrap_or(col);
        if !(m[piv * d + col].abs() > 1e-14 * scale) {
            return Err(Error::SingularMatrix);
        }
        if piv != col {
            for k in 0..d {
                m.swap(col * d + k, piv * d + k);
            }
            x.swap(col, piv);
        }
        for r in col + 1..d {
            let f = m[r * d + col] / m[col * d + col];
            if f != 0.0 {
                for k in col..d {
                    m[r * d + k] -= f * m[col * d + k];
                }
                x[r] -= f * x[col];
            }
        }
    }
    for col in (0..d).rev() {
        let mut s = x[col];
        for k in col + 1..d {
            s -= m[col * d + k] * x[k];
        }
        x[col] = s / m[col * d + col];
    }
    Ok(x)
}

/// A Volterra system discretized on a uniform grid.
#[derive(Debug, Clone)]
pub struct VolterraSystem {
    dim: usize,
    grid: TimeGrid,
    instantaneous: Vec<f64>,
    kernel: Vec<Option<ConvolutionWeights>>,
    forcing: Vec<Vec<f64>>,
}

impl VolterraSystem {
    /// System with A = I and no kernel entries; `forcing[k]` holds the nodal
    /// values of component k.
    pub fn new(grid: TimeGrid, forcing: Vec<Vec<f64>>) -> Result<Self> {
        let dim = forcing.len();
        if dim == 0 {
            return Err(Error::InvalidParameter("Volterra system needs at least one component".into()));
        }
        for (k, f) in forcing.iter().enumerate() {
            if f.len() != grid.len() {
                return Err(Error::InvalidParameter(format!(
                    "forcing component {k} has {} samples, grid has {}",
                    f.len(),
                    grid.len()
                )));
            }
        }
        let mut instantaneous = vec![0.0; dim * dim];
        for k in 0..dim {
            instantaneous[k * dim + k] = 1.0;
        }
        Ok(Self { dim, grid, instantaneous, kernel: vec![None; dim * dim], forcing })
    }

    /// Replace the instantaneous matrix (row-major).
    pub fn with_instantaneous(mut self, a: Vec<f64>) -> Result<Self> {
        if a.len() != self.dim * self.dim {
            return Err(Error::InvalidParameter("instantaneous matrix has the wrong size".into()));
        }
        self.instantaneous = a;
        Ok(self)
    }

    /// Set entry (row, col) of the kernel from precomputed weights.
    pub fn with_weights(mut self, row: usize, col: usize, w: ConvolutionWeights) -> Result<Self> {
        if row >= self.dim || col >= self.dim {
            return Err(Error::InvalidParameter(format!("kernel entry ({row}, {col}) out of range")));
        }
        if w.cells() < self.grid.n_steps() || (w.step() - self.grid.step()).abs() > 1e-12 * self.grid.step() {
            return Err(Error::InvalidParameter("kernel weights do not match the time grid".into()));
        }
        self.kernel[row * self.dim + col] = Some(w);
        Ok(self)
    }

    /// Set entry (row, col) of the kernel from a function of the lag and its
    /// behaviour near zero.
    pub fn with_kernel<K: Fn(f64) -> f64>(self, row: usize, col: usize, k: K, shape: KernelShape) -> Result<Self> {
        let w = ConvolutionWeights::new(k, shape, self.grid)?;
        self.with_weights(row, col, w)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    /// Sup over nodes of |A Φ_n − (K∗Φ)_n − F_n| for candidate nodal values.
    pub fn discrete_residual(&self, phi: &[Vec<f64>]) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for n in 0..self.grid.len() {
            for r in 0..d {
                let mut s = -self.forcing[r][n];
                for c in 0..d {
                    s += self.instantaneous[r * d + c] * phi[c][n];
                    if let Some(w) = &self.kernel[r * d + c] {
                        if n > 0 {
                            s -= w.apply(&phi[c], n);
                        }
                    }
                }
                worst = worst.max(s.abs());
            }
        }
        worst
    }
}

/// Nodal solution of a Volterra system.
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySolution {
    pub grid: TimeGrid,
    /// `values[k][n]`: component k at node n.
    pub values: Vec<Vec<f64>>,
    pub residual_norm: f64,
    pub iterations_or_steps: usize,
}

impl DensitySolution {
    pub fn component(&self, k: usize) -> &[f64] {
        &self.values[k]
    }
}

fn guard(v: &[f64], step: usize) -> Result<()> {
    if v.iter().any(|x| !x.is_finite() || x.abs() > OVERFLOW_GUARD) {
        Err(Error::Instability { step })
    } else {
        Ok(())
    }
}

/// Causal time marching: at each node the history is accumulated with the
/// product weights and the d×d system (A − W₀)Φ_n = F_n + history is solved.
pub fn solve_march(system: &VolterraSystem) -> Result<DensitySolution> {
    let d = system.dim;
    let len = system.grid.len();
    let mut phi = vec![vec![0.0; len]; d];
    let f0: Vec<f64> = (0..d).map(|k| system.forcing[k][0]).collect();
    let x0 = solve_dense(&system.instantaneous, &f0, d)?;
    guard(&x0, 0)?;
    for k in 0..d {
        phi[k][0] = x0[k];
    }
    let mut lhs = system.instantaneous.clone();
    for r in 0..d {
        for c in 0..d {
            if let Some(w) = &system.kernel[r * d + c] {
                lhs[r * d + c] -= w.self_weight();
            }
        }
    }
    for n in 1..len {
        let mut rhs = vec![0.0; d];
        for r in 0..d {
            let mut s = system.forcing[r][n];
            for c in 0..d {
                if let Some(w) = &system.kernel[r * d + c] {
                    s += w.apply_history(&phi[c], n);
                }
            }
            rhs[r] = s;
        }
        let x = solve_dense(&lhs, &rhs, d)?;
        guard(&x, n)?;
        for k in 0..d {
            phi[k][n] = x[k];
        }
    }
    let residual_norm = system.discrete_residual(&phi);
    Ok(DensitySolution { grid: system.grid, values: phi, residual_norm, iterations_or_steps: len - 1 })
}

/// Successive approximation Φ ← A⁻¹(F + K∗Φ) over the whole grid, which
/// realizes the resolvent acting on the forcing. Stops when successive
/// iterates differ by less than `tol` in the sup norm.
pub fn solve_picard(system: &VolterraSystem, max_iter: usize, tol: f64) -> Result<DensitySolution> {
    let d = system.dim;
    let len = system.grid.len();
    let mut phi = vec![vec![0.0; len]; d];
    let mut last_diff = f64::INFINITY;
    let mut ratio = f64::NAN;
    for it in 1..=max_iter {
        let mut next = vec![vec![0.0; len]; d];
        for n in 0..len {
            let mut rhs = vec![0.0; d];
            for r in 0..d {
                let mut s = system.forcing[r][n];
                if n > 0 {
                    for c in 0..d {
                        if let Some(w) = &system.kernel[r * d + c] {
                            s += w.apply(&phi[c], n);
                        }
                    }
                }
                rhs[r] = s;
            }
            let x = solve_dense(&system.instantaneous, &rhs, d)?;
            guard(&x, n)?;
            for k in 0..d {
                next[k][n] = x[k];
            }
        }
        let diff = phi
            .iter()
            .zip(&next)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0_f64, f64::max);
        if last_diff.is_finite() && last_diff > 0.0 {
            ratio = diff / last_diff;
        }
        phi = next;
        if diff < tol {
            let residual_norm = system.discrete_residual(&phi);
            return Ok(DensitySolution { grid: system.grid, values: phi, residual_norm, iterations_or_steps: it });
        }
        last_diff = diff;
    }
    Err(Error::NoConvergence { iterations: max_iter, ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{gamma, mittag_leffler, MLParams};

    fn exp_system(n: usize) -> VolterraSystem {
        let g = TimeGrid::new(1.0, n).unwrap();
        VolterraSystem::new(g, vec![vec![1.0; n + 1]])
            .unwrap()
            .with_kernel(0, 0, |_| 1.0, KernelShape::Power { coeff: 1.0, exponent: 0.0 })
            .unwrap()
    }

    #[test]
    fn zero_kernel_returns_forcing() {
        let g = TimeGrid::new(1.0, 8).unwrap();
        let f: Vec<f64> = g.nodes().iter().map(|t| t.sin()).collect();
        let s = VolterraSystem::new(g, vec![f.clone()]).unwrap();
        assert_eq!(solve_march(&s).unwrap().values[0], f);
        let p = solve_picard(&s, 5, 1e-12).unwrap();
        assert_eq!(p.values[0], f);
        assert!(p.iterations_or_steps <= 2);
    }

    #[test]
    fn exponential_benchmark() {
        let s = exp_system(512);
        let m = solve_march(&s).unwrap();
        assert!((m.values[0][512] - core::f64::consts::E).abs() < 2e-4);
        let p = solve_picard(&s, 200, 1e-12).unwrap();
        let diff = m.values[0].iter().zip(&p.values[0]).fold(0.0_f64, |a, (x, y)| a.max((x - y).abs()));
        assert!(diff < 1e-10);
    }

    #[test]
    fn abel_kernel_gives_mittag_leffler() {
        let n = 256;
        let g = TimeGrid::new(1.0, n).unwrap();
        let c = 1.0 / gamma(0.5);
        let s = VolterraSystem::new(g, vec![vec![1.0; n + 1]])
            .unwrap()
            .with_kernel(0, 0, |s| c * s.powf(-0.5), KernelShape::Power { coeff: c, exponent: -0.5 })
            .unwrap();
        let m = solve_march(&s).unwrap();
        let exact = mittag_leffler(MLParams::single(0.5).unwrap(), 1.0).unwrap();
        assert!((m.values[0][n] - exact).abs() < 5e-3, "{} vs {exact}", m.values[0][n]);
    }

    #[test]
    fn singular_instantaneous_matrix_is_reported() {
        let g = TimeGrid::new(1.0, 4).unwrap();
        let s = VolterraSystem::new(g, vec![vec![0.0; 5], vec![0.0; 5]])
            .unwrap()
            .with_instantaneous(vec![1.0, 2.0, 2.0, 4.0])
            .unwrap();
        assert_eq!(solve_march(&s).unwrap_err(), Error::SingularMatrix);
    }

    #[test]
    fn dense_solver_pivots() {
        let x = solve_dense(&[0.0, 1.0, 2.0, 3.0], &[1.0, 8.0], 2).unwrap();
        assert!((x[0] - 2.5).abs() < 1e-15 && (x[1] - 1.0).abs() < 1e-15);
    }
}
