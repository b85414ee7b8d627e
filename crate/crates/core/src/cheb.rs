//! Piecewise Chebyshev interpolation on an interval, refined adaptively until
//! the trailing coefficients of every piece fall below a tolerance.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Degree of each polynomial piece.
pub const DEGREE: usize = 24;
const MIN_WIDTH: f64 = 1e-9;
const MAX_PIECES: usize = 20_000;

#[derive(Debug, Clone)]
struct Piece {
    a: f64,
    b: f64,
    coeffs: Vec<f64>,
}

impl Piece {
    fn eval(&self, x: f64) -> f64 {
        let u = (2.0 * x - self.a - self.b) / (self.b - self.a);
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = c + 2.0 * u * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        self.coeffs[0] + u * b1 - b2
    }
}

/// Adaptive piecewise Chebyshev interpolant of a real function on `[a, b]`.
#[derive(Debug, Clone)]
pub struct PiecewiseCheb {
    breaks: Vec<f64>,
    pieces: Vec<Piece>,
}

fn fit<F>(f: &mut F, a: f64, b: f64) -> Result<Piece>
where
    F: FnMut(f64) -> Result<f64>,
{
    let n = DEGREE + 1;
    let mut values = Vec::with_capacity(n);
    for k in 0..n {
        let theta = PI * (k as f64 + 0.5) / n as f64;
        let x = 0.5 * (a + b) + 0.5 * (b - a) * theta.cos();
        values.push(f(x)?);
    }
    let mut coeffs = Vec::with_capacity(n);
    for j in 0..n {
        let mut s = 0.0;
        for (k, v) in values.iter().enumerate() {
            s += v * (PI * j as f64 * (k as f64 + 0.5) / n as f64).cos();
        }
        let scale = if j == 0 { 1.0 } else { 2.0 };
        coeffs.push(scale * s / n as f64);
    }
    Ok(Piece { a, b, coeffs })
}

impl PiecewiseCheb {
    /// Build an interpolant with absolute accuracy about `tol` on `[a, b]`,
    /// starting from `initial` equal pieces.
    pub fn build<F>(mut f: F, a: f64, b: f64, initial: usize, tol: f64) -> Result<Self>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        if !(b > a) {
            return Err(Error::InvalidParameter(format!("empty interpolation interval [{a}, {b}]")));
        }
        let mut stack: Vec<(f64, f64)> = Vec::new();
        let m = initial.max(1);
        for k in (0..m).rev() {
            let lo = a + (b - a) * k as f64 / m as f64;
            let hi = if k + 1 == m { b } else { a + (b - a) * (k + 1) as f64 / m as f64 };
            stack.push((lo, hi));
        }
        let mut pieces = Vec::new();
        while let Some((lo, hi)) = stack.pop() {
            let piece = fit(&mut f, lo, hi)?;
            let tail = piece.coeffs[DEGREE - 2..].iter().fold(0.0_f64, |m, c| m.max(c.abs()));
            if tail <= tol || hi - lo <= MIN_WIDTH {
                pieces.push(piece);
                if pieces.len() > MAX_PIECES {
                    return Err(Error::GridTooCoarse(format!("Chebyshev refinement exceeded {MAX_PIECES} pieces")));
                }
            } else {
                let mid = 0.5 * (lo + hi);
                stack.push((mid, hi));
                stack.push((lo, mid));
            }
        }
        let breaks = pieces.iter().map(|p| p.a).collect();
        Ok(Self { breaks, pieces })
    }

    pub fn lower(&self) -> f64 {
        self.pieces[0].a
    }

    pub fn upper(&self) -> f64 {
        self.pieces[self.pieces.len() - 1].b
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Value at `x`; points outside the interval are clamped to it.
    pub fn eval(&self, x: f64) -> f64 {
        let idx = match self.breaks.binary_search_by(|b| b.partial_cmp(&x).unwrap_or(core::cmp::Ordering::Less)) {
            Ok(i) => i,
            Err(0) => 0,
            Err(i) => i - 1,
        };
        let p = &self.pieces[idx];
        p.eval(x.clamp(p.a, p.b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_oscillatory_function() {
        let f = |x: f64| Ok((3.0 * x).sin() * (-0.1 * x).exp());
        let c = PiecewiseCheb::build(f, 0.0, 40.0, 4, 1e-14).unwrap();
        for k in 0..1000 {
            let x = 40.0 * k as f64 / 999.0;
            assert!((c.eval(x) - f(x).unwrap()).abs() < 1e-13, "x={x}");
        }
        assert!(c.len() > 4);
    }

    #[test]
    fn propagates_evaluation_errors() {
        let r = PiecewiseCheb::build(|_| Err(Error::SingularMatrix), 0.0, 1.0, 1, 1e-12);
        assert!(r.is_err());
    }
}
