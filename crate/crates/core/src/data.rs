//! One-dimensional data profiles: boundary data in t and the separable
//! factors of a forcing term in x or t.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fractional::{l1_caputo, TimeGrid};
use crate::special::{gamma, rgamma};

/// A real function of one variable.
#[derive(Debug, Clone, PartialEq)]
pub enum DataProfile {
    Zero,
    Constant(f64),
    /// c·s^p with p ≥ 0; non-integer p needs s ≥ 0.
    Power { coeff: f64, exponent: f64 },
    /// sin(ω·s).
    Sine { freq: f64 },
    /// cos(ω·s).
    Cosine { freq: f64 },
    /// exp(1 − 1/(1 − r²)) with r = (s − c)/w for |r| < 1, zero elsewhere.
    Bump { center: f64, width: f64 },
    /// Piecewise-linear interpolant of samples on a uniform grid of
    /// `[lower, upper]`, zero outside it.
    Sampled { lower: f64, upper: f64, values: Vec<f64> },
}

impl DataProfile {
    /// Parse a named preset: `zero`, `const:c`, `poly:k`, `poly:k,c`, `sin`,
    /// `sin:w`, `cos`, `cos:w`, `bump:c,w`. File paths are resolved by the caller.
    pub fn parse_preset(text: &str) -> Result<Self> {
        let text = text.trim();
        let (name, args) = match text.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a)),
            None => (text, None),
        };
        let nums = |a: Option<&str>| -> Result<Vec<f64>> {
            match a {
                None => Ok(Vec::new()),
                Some(a) => a
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<f64>()
                            .map_err(|_| Error::InvalidParameter(format!("bad number `{}` in preset `{text}`", s.trim())))
                    })
                    .collect(),
            }
        };
        let args = nums(args)?;
        let arity = |lo: usize, hi: usize| -> Result<()> {
            if args.len() < lo || args.len() > hi {
                Err(Error::InvalidParameter(format!("preset `{text}` takes {lo} to {hi} arguments")))
            } else {
                Ok(())
            }
        };
        match name {
            "zero" => arity(0, 0).map(|_| Self::Zero),
            "const" => arity(1, 1).map(|_| Self::Constant(args[0])),
            "poly" => {
                arity(1, 2)?;
                let k = args[0];
                if !(k >= 0.0 && k.fract() == 0.0 && k <= 32.0) {
                    return Err(Error::InvalidParameter(format!("poly degree must be an integer in 0..=32, got {k}")));
                }
                Ok(Self::Power { coeff: args.get(1).copied().unwrap_or(1.0), exponent: k })
            }
            "sin" => {
                arity(0, 1)?;
                Ok(Self::Sine { freq: args.first().copied().unwrap_or(core::f64::consts::PI) })
            }
            "cos" => {
                arity(0, 1)?;
                Ok(Self::Cosine { freq: args.first().copied().unwrap_or(core::f64::consts::PI) })
            }
            "bump" => {
                arity(2, 2)?;
                if !(args[1] > 0.0) {
                    return Err(Error::InvalidParameter(format!("bump width must be positive, got {}", args[1])));
                }
                Ok(Self::Bump { center: args[0], width: args[1] })
            }
            _ => Err(Error::InvalidParameter(format!("unknown preset `{text}`"))),
        }
    }

    pub fn sampled(lower: f64, upper: f64, values: Vec<f64>) -> Result<Self> {
        if !(upper > lower) || values.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "sampled profile needs upper > lower and two samples, got [{lower}, {upper}] with {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("sampled profile contains non-finite values".into()));
        }
        Ok(Self::Sampled { lower, upper, values })
    }

    pub fn eval(&self, s: f64) -> f64 {
        match self {
            Self::Zero => 0.0,
            Self::Constant(c) => *c,
            Self::Power { coeff, exponent } if exponent.fract() == 0.0 => coeff * s.powi(*exponent as i32),
            Self::Power { coeff, exponent } => coeff * s.max(0.0).powf(*exponent),
            Self::Sine { freq } => (freq * s).sin(),
            Self::Cosine { freq } => (freq * s).cos(),
            Self::Bump { center, width } => {
                let r = (s - center) / width;
                if r.abs() < 1.0 {
                    (1.0 - 1.0 / (1.0 - r * r)).exp()
                } else {
                    0.0
                }
            }
            Self::Sampled { lower, upper, values } => {
                if s < *lower || s > *upper {
                    return 0.0;
                }
                let n = values.len() - 1;
                let u = (s - lower) / (upper - lower) * n as f64;
                let k = (u.floor() as usize).min(n - 1);
                let w = u - k as f64;
                values[k] * (1.0 - w) + values[k + 1] * w
            }
        }
    }

    /// Closed interval outside which the profile vanishes.
    pub fn support(&self) -> (f64, f64) {
        match self {
            Self::Zero => (0.0, 0.0),
            Self::Bump { center, width } => (center - width, center + width),
            Self::Sampled { lower, upper, .. } => (*lower, *upper),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Self::Zero => true,
            Self::Constant(c) => *c == 0.0,
            Self::Power { coeff, .. } => *coeff == 0.0,
            Self::Sine { freq } => *freq == 0.0,
            Self::Cosine { .. } => false,
            Self::Bump { .. } => false,
            Self::Sampled { values, .. } => values.iter().all(|v| *v == 0.0),
        }
    }

    /// Exact Caputo derivative of order ν where a closed form is available.
    pub fn caputo_exact(&self, nu: f64, t: f64) -> Option<f64> {
        if t <= 0.0 {
            return Some(0.0);
        }
        match self {
            Self::Zero | Self::Constant(_) => Some(0.0),
            Self::Power { exponent, .. } if *exponent == 0.0 => Some(0.0),
            Self::Power { coeff, exponent } => {
                let k = *exponent;
                Some(coeff * gamma(k + 1.0) * rgamma(k + 1.0 - nu) * t.powf(k - nu))
            }
            Self::Sine { freq } => {
                // Σ_j (−1)^j ω^{2j+1} t^{2j+1−ν}/Γ(2j+2−ν)
                let x = freq * t;
                let mut term = *freq * t.powf(1.0 - nu) * rgamma(2.0 - nu);
                let mut sum = term;
                for j in 1..200 {
                    let jf = j as f64;
                    term *= -x * x / ((2.0 * jf - nu) * (2.0 * jf + 1.0 - nu));
                    sum += term;
                    if term.abs() < 1e-17 * sum.abs().max(1e-300) {
                        break;
                    }
                }
                Some(sum)
            }
            Self::Cosine { freq } => {
                // Σ_{j≥1} (−1)^j ω^{2j} t^{2j−ν}/Γ(2j+1−ν)
                let x = freq * t;
                let mut term = -freq * freq * t.powf(2.0 - nu) * rgamma(3.0 - nu);
                let mut sum = term;
                for j in 2..200 {
                    let jf = j as f64;
                    term *= -x * x / ((2.0 * jf - 1.0 - nu) * (2.0 * jf - nu));
                    sum += term;
                    if term.abs() < 1e-17 * sum.abs().max(1e-300) {
                        break;
                    }
                }
                Some(sum)
            }
            _ => None,
        }
    }

    /// Caputo derivative of order ν ∈ (0, 1) at every node of `grid`: the
    /// closed form where available, the L1 scheme otherwise.
    pub fn caputo_on(&self, nu: f64, grid: TimeGrid) -> Vec<f64> {
        let nodes = grid.nodes();
        if self.caputo_exact(nu, 1.0).is_some() {
            return nodes.iter().map(|&t| self.caputo_exact(nu, t).unwrap_or(0.0)).collect();
        }
        let values: Vec<f64> = nodes.iter().map(|&t| self.eval(t)).collect();
        l1_caputo(&values, grid.step(), nu)
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        match self {
            Self::Zero => "zero".into(),
            Self::Constant(c) => format!("const:{c}"),
            Self::Power { coeff, exponent } if *coeff == 1.0 => format!("poly:{exponent}"),
            Self::Power { coeff, exponent } => format!("poly:{exponent},{coeff}"),
            Self::Sine { freq } => format!("sin:{freq}"),
            Self::Cosine { freq } => format!("cos:{freq}"),
            Self::Bump { center, width } => format!("bump:{center},{width}"),
            Self::Sampled { lower, upper, values } => format!("sampled[{lower},{upper}]x{}", values.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse() {
        assert_eq!(DataProfile::parse_preset("poly:2").unwrap(), DataProfile::Power { coeff: 1.0, exponent: 2.0 });
        assert_eq!(DataProfile::parse_preset("bump:0.5,0.2").unwrap(), DataProfile::Bump { center: 0.5, width: 0.2 });
        assert!(matches!(DataProfile::parse_preset("sin").unwrap(), DataProfile::Sine { .. }));
        assert!(DataProfile::parse_preset("poly:1.5").is_err());
        assert!(DataProfile::parse_preset("bump:1").is_err());
        assert!(DataProfile::parse_preset("wave").is_err());
    }

    #[test]
    fn sine_caputo_series_matches_l1() {
        let g = TimeGrid::new(1.0, 4096).unwrap();
        let s = DataProfile::Sine { freq: 2.0 };
        let values: Vec<f64> = g.nodes().iter().map(|&t| s.eval(t)).collect();
        let l1 = l1_caputo(&values, g.step(), 0.4);
        let exact = s.caputo_exact(0.4, 1.0).unwrap();
        assert!((l1[4096] - exact).abs() < 1e-5, "{} vs {exact}", l1[4096]);
    }

    #[test]
    fn cosine_caputo_series_matches_l1() {
        let g = TimeGrid::new(1.0, 4096).unwrap();
        let c = DataProfile::Cosine { freq: 3.0 };
        let values: Vec<f64> = g.nodes().iter().map(|&t| c.eval(t)).collect();
        let l1 = l1_caputo(&values, g.step(), 0.6);
        let exact = c.caputo_exact(0.6, 1.0).unwrap();
        assert!((l1[4096] - exact).abs() < 1e-4, "{} vs {exact}", l1[4096]);
    }

    #[test]
    fn bump_is_compact_and_smooth() {
        let b = DataProfile::Bump { center: 0.5, width: 0.25 };
        assert_eq!(b.eval(0.2), 0.0);
        assert!((b.eval(0.5) - 1.0).abs() < 1e-15);
        assert_eq!(b.support(), (0.25, 0.75));
    }

    #[test]
    fn sampled_interpolates_linearly() {
        let p = DataProfile::sampled(0.0, 2.0, alloc::vec![0.0, 1.0, 4.0]).unwrap();
        assert!((p.eval(1.5) - 2.5).abs() < 1e-15);
        assert_eq!(p.eval(2.5), 0.0);
    }
}
