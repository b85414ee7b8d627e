//! Potential-method solver for initial-boundary value problems of the
//! time-fractional Airy equation
//!
//! ```text
//!     ∂ₜᵅ u − u_xxx = f,   0 < α < 1,
//! ```
//!
//! posed on `(0, 1)`, `(0, ∞)` and `(−∞, 0)` with zero initial data.
//!
//! The crate is `no_std` (it needs `alloc`). Layering, bottom up:
//!
//! - [`special`]: Wright, M-Wright and Mittag-Leffler functions.
//! - [`fractional`]: grid Caputo derivative (L1) and Riemann-Liouville integral.
//! - [`kernels`]: the fundamental solutions `G` and `V` and their μ-shift calculus.
//! - [`convolution`]: product-integration moment tables for time convolutions.
//! - [`data`]: boundary-data and forcing profiles, named presets.
//! - [`potentials`]: layer and volume potentials with their jump limits.
//! - [`volterra`]: second-kind Volterra systems with weakly singular kernels.
//! - [`problems`]: assembly of the three initial-boundary value problems.
//! - [`verification`]: a-posteriori residual and identity checks.
#![cfg_attr(not(any(test, feature = "std")), no_std)]
// `!(x > y)` rejects NaN along with the ordered failures.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Node tables keep their published digits; index loops mirror the quadrature and time-stepping formulas.
#![allow(clippy::excessive_precision, clippy::needless_range_loop)]

extern crate alloc;

pub mod cheb;
pub mod convolution;
pub mod data;
pub mod error;
mod exec;
pub mod fractional;
pub mod kernels;
pub mod potentials;
pub mod problems;
pub mod quad;
pub mod special;
pub mod verification;
pub mod volterra;

pub use error::{Error, Result};
pub use kernels::{Branch, FractionalOrder, KernelSpec};
pub use num_complex::Complex64;
