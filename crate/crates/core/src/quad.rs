//! Quadrature building blocks: adaptive Gauss–Kronrod (21 points) for
//! vector-valued integrands and Gauss–Legendre rules of arbitrary order.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_703_999_960,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// 10-point Gauss weights, paired with XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Tolerances and limits for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { abs_tol: 1e-13, rel_tol: 1e-11, max_intervals: 2000 }
    }
}

impl QuadConfig {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        Self { abs_tol, rel_tol, ..Self::default() }
    }

    pub fn with_max_intervals(mut self, n: usize) -> Self {
        self.max_intervals = n;
        self
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature<const N: usize> {
    pub value: [f64; N],
    pub error: f64,
    /// Integral of the componentwise absolute value (for rounding estimates).
    pub abs_value: f64,
    pub evaluations: usize,
}

struct Segment<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    abs_value: f64,
    error: f64,
}

fn gk21<const N: usize, F>(f: &mut F, a: f64, b: f64) -> Segment<N>
where
    F: FnMut(f64) -> [f64; N],
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = [0.0; N];
    let mut gauss = [0.0; N];
    let mut abs_sum = 0.0;
    for k in 0..N {
        kronrod[k] = WGK[10] * fc[k];
        abs_sum += WGK[10] * fc[k].abs();
    }
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        for k in 0..N {
            let s = f1[k] + f2[k];
            kronrod[k] += WGK[j] * s;
            abs_sum += WGK[j] * (f1[k].abs() + f2[k].abs());
            if j % 2 == 1 {
                gauss[k] += WG[j / 2] * s;
            }
        }
    }
    let mut error: f64 = 0.0;
    let mut value = [0.0; N];
    for k in 0..N {
        value[k] = kronrod[k] * half;
        let diff = ((kronrod[k] - gauss[k]) * half).abs();
        error = error.max(diff);
    }
    let error = error.max(50.0 * f64::EPSILON * abs_sum * half.abs());
    Segment { a, b, value, abs_value: abs_sum * half.abs(), error }
}

/// Adaptive Gauss–Kronrod integration of a vector-valued integrand on `[a, b]`.
///
/// Bisects the segment with the largest error estimate until the total error
/// is below `max(abs_tol, rel_tol·‖I‖∞)`.
pub fn integrate<const N: usize, F>(mut f: F, a: f64, b: f64, cfg: QuadConfig) -> Result<Quadrature<N>>
where
    F: FnMut(f64) -> [f64; N],
{
    if a == b {
        return Ok(Quadrature { value: [0.0; N], error: 0.0, abs_value: 0.0, evaluations: 0 });
    }
    let mut segments: Vec<Segment<N>> = Vec::with_capacity(64);
    segments.push(gk21(&mut f, a, b));
    let mut evaluations = 21;
    loop {
        let mut total = [0.0; N];
        let mut err = 0.0;
        let mut abs_value = 0.0;
        let mut worst = 0;
        for (i, s) in segments.iter().enumerate() {
            for k in 0..N {
                total[k] += s.value[k];
            }
            err += s.error;
            abs_value += s.abs_value;
            if s.error > segments[worst].error {
                worst = i;
            }
        }
        let norm = total.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let tol = cfg.abs_tol.max(cfg.rel_tol * norm);
        if err <= tol || err <= 1e3 * f64::EPSILON * abs_value {
            return Ok(Quadrature { value: total, error: err, abs_value, evaluations });
        }
        if segments.len() >= cfg.max_intervals {
            return Err(Error::QuadratureFailure(format!(
                "interval limit {} reached on [{a}, {b}], error {err:.3e} > tolerance {tol:.3e}",
                cfg.max_intervals
            )));
        }
        let s = segments.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        if mid <= s.a.min(s.b) || mid >= s.a.max(s.b) {
            return Err(Error::QuadratureFailure(format!("segment underflow near {mid}")));
        }
        segments.push(gk21(&mut f, s.a, mid));
        segments.push(gk21(&mut f, mid, s.b));
        evaluations += 42;
    }
}

/// Scalar convenience wrapper around [`integrate`].
pub fn integrate_scalar<F>(mut f: F, a: f64, b: f64, cfg: QuadConfig) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    let q = integrate(|x| [f(x)], a, b, cfg)?;
    Ok((q.value[0], q.error))
}

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = alloc::vec![0.0; n];
        let mut weights = alloc::vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Apply the rule on `[a, b]` split into `panels` equal panels.
    pub fn composite<const N: usize, F>(&self, f: &mut F, a: f64, b: f64, panels: usize) -> [f64; N]
    where
        F: FnMut(f64) -> [f64; N],
    {
        let width = (b - a) / panels as f64;
        let mut acc = [0.0; N];
        for p in 0..panels {
            let lo = a + width * p as f64;
            let c = lo + 0.5 * width;
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                let v = f(c + 0.5 * width * x);
                for k in 0..N {
                    acc[k] += 0.5 * width * w * v[k];
                }
            }
        }
        acc
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}
