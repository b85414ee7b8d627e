//! Reference values computed once with mpmath at 40 digits and frozen here.

#![allow(clippy::excessive_precision)]

use fracairy_core::kernels::kernel_eval;
use fracairy_core::special::{gamma, m_wright, mittag_leffler, wright_phi, wright_phi_hankel, MLParams, WrightParams};
use fracairy_core::{Complex64, FractionalOrder, KernelSpec};

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[test]
fn wright_function_values() {
    let cases: [(f64, f64, f64, f64, f64, f64); 5] = [
        (-1.0 / 6.0, 1.0 / 3.0, -2.0, 0.0, 0.10347585706867889, 0.0),
        (-0.25, 0.5, 1.5, 0.5, 0.88029514044759801, -0.058937989131434418),
        (-0.3, 0.7, -4.0, 3.0, -0.031624108220106204, -0.011110628692551017),
        (-0.1, 1.0, 0.0, 2.0, -0.30889572316865473, 0.986493764901833),
        (-0.2, 0.0, -1.5, 0.0, 0.073128191534649366, 0.0),
    ];
    for (rho, mu, re, im, want_re, want_im) in cases {
        let p = WrightParams::new(rho, mu).unwrap();
        let z = Complex64::new(re, im);
        for v in [wright_phi(p, z).unwrap().value, wright_phi_hankel(p, z).unwrap().value] {
            assert!(rel_close(v.re, want_re, 1e-11) && rel_close(v.im, want_im, 1e-11), "phi({rho},{mu};{z}) = {v}");
        }
    }
}

#[test]
fn m_wright_values() {
    let cases = [
        (0.25, 0.8, 0.45017238159401578),
        (0.5, 2.0, 0.20755374871029735),
        (0.75, 1.2, 0.62323017339093142),
        (1.0 / 3.0, 3.0, 0.064254604778390292),
    ];
    for (nu, x, want) in cases {
        let v = m_wright(nu, Complex64::new(x, 0.0)).unwrap().value;
        assert!(rel_close(v.re, want, 1e-12) && v.im.abs() < 1e-14, "M_{nu}({x}) = {v}");
    }
}

#[test]
fn mittag_leffler_values() {
    let cases = [
        (0.5, 1.0, -2.0, 0.25539567631050574),
        (0.8, 0.8, 1.5, 7.3018354284119863),
        (0.3, 1.0, -1.0, 0.45659440832969067),
        (0.9, 0.9, 4.0, 137.76271464765641),
    ];
    for (a, b, x, want) in cases {
        let v = mittag_leffler(MLParams::new(a, b).unwrap(), x).unwrap();
        assert!((v - want).abs() <= 1e-11 * want.abs(), "E_{{{a},{b}}}({x}) = {v}");
    }
}

#[test]
fn mittag_leffler_reports_cancellation() {
    // E_{0.3}(−5) = 0.13708086902027064, out of reach of a double-precision series.
    let p = MLParams::new(0.3, 1.0).unwrap();
    assert!(mittag_leffler(p, -5.0).is_err());
}

#[test]
fn gamma_values() {
    for (x, want) in [(0.1, 9.5135076986687313), (2.5, 1.329340388179137), (-1.5, 2.3632718012073547), (7.3, 1271.4236336639088)] {
        let v = gamma(x);
        assert!((v - want).abs() <= 1e-13 * want.abs(), "gamma({x}) = {v}");
    }
}

#[test]
fn fundamental_solution_values_left_of_origin() {
    for (a, x, t, want) in [(0.5, -0.7, 0.6, 0.11448505440799397), (0.3, -1.2, 1.0, 0.035883216153138537)] {
        let alpha = FractionalOrder::new(a).unwrap();
        let v = kernel_eval(KernelSpec::g(alpha, alpha.two_delta(), 0), x, t).unwrap().value;
        assert!((v - want).abs() <= 1e-12, "G({x},{t}) = {v}");
    }
}
