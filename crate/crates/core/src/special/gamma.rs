//! Gamma and reciprocal gamma on the real line.

use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

/// Γ(x). Poles return ±∞ (or NaN) as `libm::tgamma` does.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// ln|Γ(x)| together with the sign of Γ(x).
pub fn ln_gamma(x: f64) -> (f64, f64) {
    let (v, s) = libm::lgamma_r(x);
    (v, if s < 0 { -1.0 } else { 1.0 })
}

/// sin(πx) with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    if x.fract() == 0.0 {
        return 0.0;
    }
    // Reduce to [-1, 1) keeping the period-2 structure.
    let mut r = x % 2.0;
    if r >= 1.0 {
        r -= 2.0;
    } else if r < -1.0 {
        r += 2.0;
    }
    let s = if r < 0.0 { -1.0 } else { 1.0 };
    let a = r.abs();
    let a = if a > 0.5 { 1.0 - a } else { a };
    s * (PI * a).sin()
}

/// 1/Γ(x), treated as the entire function it is: exactly zero at
/// x = 0, −1, −2, … and finite (possibly huge) elsewhere.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x.fract() == 0.0 {
        return 0.0;
    }
    if x >= 0.5 {
        if x > 171.0 {
            let (lg, _) = ln_gamma(x);
            return (-lg).exp();
        }
        return 1.0 / gamma(x);
    }
    // Reflection: 1/Γ(x) = sin(πx)·Γ(1−x)/π.
    let y = 1.0 - x;
    if y < 171.0 {
        sin_pi(x) * gamma(y) / PI
    } else {
        let (lg, _) = ln_gamma(y);
        sin_pi(x) * (lg - PI.ln()).exp()
    }
}

/// ln|1/Γ(x)| and its sign; `None` at the zeros of 1/Γ.
pub fn ln_rgamma(x: f64) -> Option<(f64, f64)> {
    if x <= 0.0 && x.fract() == 0.0 {
        return None;
    }
    if x >= 0.5 {
        let (lg, _) = ln_gamma(x);
        Some((-lg, 1.0))
    } else {
        let sp = sin_pi(x);
        let (lg, _) = ln_gamma(1.0 - x);
        Some((sp.abs().ln() + lg - PI.ln(), sp.signum()))
    }
}

/// Upper envelope of |1/Γ(x)| that ignores the zeros of sin(πx):
/// `1/Γ(x)` for x ≥ 1/2 and `Γ(1−x)/π` otherwise. Returned as a logarithm.
pub fn ln_rgamma_envelope(x: f64) -> f64 {
    if x >= 0.5 {
        -ln_gamma(x).0
    } else {
        ln_gamma(1.0 - x).0 - PI.ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_gamma_zeros_and_values() {
        for n in 0..20 {
            assert_eq!(rgamma(-(n as f64)), 0.0);
        }
        assert!((rgamma(0.5) - 1.0 / PI.sqrt()).abs() < 1e-15);
        assert!((rgamma(-0.5) + 0.5 / PI.sqrt()).abs() < 1e-15);
        // 1/Γ(1/3) ≈ 0.373282173...
        assert!((rgamma(1.0 / 3.0) - 0.373_282_173_907_395_1).abs() < 1e-14);
        assert!((rgamma(4.0) - 1.0 / 6.0).abs() < 1e-16);
    }

    #[test]
    fn reciprocal_gamma_is_continuous_across_poles() {
        for n in 0..6 {
            let x = -(n as f64);
            let h = 1e-7;
            let l = rgamma(x - h);
            let r = rgamma(x + h);
            // Linear behaviour near a simple zero.
            assert!((l + r).abs() < 1e-6 * l.abs().max(1e-12) + 1e-12, "n={n} {l} {r}");
        }
    }

    #[test]
    fn sin_pi_exact_at_integers_and_halves() {
        assert_eq!(sin_pi(3.0), 0.0);
        assert_eq!(sin_pi(-7.0), 0.0);
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-16);
        assert!((sin_pi(-2.5) + 1.0).abs() < 1e-15);
        assert!((sin_pi(1.25) + (PI * 0.25).sin()).abs() < 1e-15);
    }

    #[test]
    fn log_forms_agree_with_direct() {
        for &x in &[-3.7, -0.2, 0.3, 2.5, 12.0] {
            let (l, s) = ln_rgamma(x).unwrap();
            assert!((s * l.exp() - rgamma(x)).abs() < 1e-13 * rgamma(x).abs().max(1.0));
            assert!(ln_rgamma_envelope(x) >= l - 1e-12);
        }
    }
}
