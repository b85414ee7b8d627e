use fracairy_core::data::DataProfile;
use fracairy_core::fractional::{l1_caputo, TimeGrid};
use fracairy_core::kernels::{Kernel, KernelProfile};
use fracairy_core::potentials::KernelBank;
use fracairy_core::problems::{solve, ProblemId, ProblemSetup, SpaceGrid};
use fracairy_core::special::{
    f_wright, gamma, m_wright, mittag_leffler, wright_phi, wright_phi_hankel, MLParams, WrightParams,
};
use fracairy_core::verification::Relation;
use fracairy_core::volterra::{solve_march, VolterraSystem};
use fracairy_core::{Branch, Complex64, FractionalOrder, KernelSpec};
use proptest::prelude::*;
use std::sync::{Mutex, OnceLock};

fn shared_bank() -> &'static Mutex<KernelBank> {
    static BANK: OnceLock<Mutex<KernelBank>> = OnceLock::new();
    BANK.get_or_init(|| Mutex::new(KernelBank::new()))
}

/// Problem 2 with ψ₁ = c₁t², ψ₂ = c₂t on a small grid.
fn half_line_solve(c1: f64, c2: f64) -> Vec<f64> {
    let alpha = FractionalOrder::new(0.6).unwrap();
    let setup = ProblemSetup::with_defaults(ProblemId::Two, alpha)
        .with_time(TimeGrid::new(1.0, 32).unwrap())
        .with_space(SpaceGrid::new(0.0, 2.0, 8).unwrap())
        .with_boundary("psi1", DataProfile::Power { coeff: c1, exponent: 2.0 })
        .unwrap()
        .with_boundary("psi2", DataProfile::Power { coeff: c2, exponent: 1.0 })
        .unwrap();
    solve(&setup, &mut shared_bank().lock().unwrap()).unwrap().u
}

fn half_line_basis() -> &'static (Vec<f64>, Vec<f64>) {
    static BASIS: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    BASIS.get_or_init(|| (half_line_solve(1.0, 0.0), half_line_solve(0.0, 1.0)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn f_wright_is_nu_z_m_wright(nu in 0.05f64..0.95, x in 0.0f64..10.0) {
        let z = Complex64::new(x, 0.0);
        let f = f_wright(nu, z).unwrap().value;
        let m = m_wright(nu, z).unwrap().value;
        prop_assert!((f - m * z * nu).norm() <= 1e-10);
    }

    #[test]
    fn series_agrees_with_hankel_loop(
        rho in -0.33f64..-0.05,
        mu in 0.0f64..2.0,
        r in 0.0f64..4.0,
        theta in -3.1f64..3.1,
    ) {
        let p = WrightParams::new(rho, mu).unwrap();
        let z = Complex64::from_polar(r, theta);
        let a = wright_phi(p, z).unwrap().value;
        let b = wright_phi_hankel(p, z).unwrap().value;
        prop_assert!((a - b).norm() <= 1e-9 * a.norm().max(1.0), "{a} vs {b}");
    }

    #[test]
    fn derivative_shifts_mu_by_rho(rho in -0.33f64..-0.05, mu in 0.2f64..1.8, x in -6.0f64..3.0, y in -3.0f64..3.0) {
        let h = 1e-5;
        let p = WrightParams::new(rho, mu).unwrap();
        let z = Complex64::new(x, y);
        let fd = (wright_phi(p, z + h).unwrap().value - wright_phi(p, z - h).unwrap().value) / (2.0 * h);
        let exact = wright_phi(WrightParams::new(rho, mu + rho).unwrap(), z).unwrap().value;
        prop_assert!((fd - exact).norm() <= 1e-6, "{fd} vs {exact}");
    }

    #[test]
    fn mittag_leffler_of_order_one_is_exp(z in 0.0f64..5.0) {
        let v = mittag_leffler(MLParams::single(1.0).unwrap(), z).unwrap();
        prop_assert!((v - z.exp()).abs() <= 1e-10 * z.exp());
    }

    #[test]
    fn l1_is_exact_on_linear_data(nu in 0.05f64..0.95, c in -3.0f64..3.0, n in 4usize..64) {
        let g = TimeGrid::new(1.0, n).unwrap();
        let values: Vec<f64> = g.nodes().iter().map(|t| c * t).collect();
        let d = l1_caputo(&values, g.step(), nu);
        for (t, v) in g.nodes().iter().zip(&d).skip(1) {
            let exact = c * t.powf(1.0 - nu) / gamma(2.0 - nu);
            prop_assert!((v - exact).abs() <= 1e-12 * (1.0 + exact.abs()));
        }
    }

    #[test]
    fn relations_are_consistent(m in -2.0f64..2.0, e in -2.0f64..2.0, tol in 0.0f64..1.0) {
        let close = Relation::Close.holds(m, e, tol);
        prop_assert_eq!(close, Relation::AtMost.holds(m, e, tol) && Relation::AtLeast.holds(m, e, tol));
        prop_assert_eq!(Relation::AtMost.holds(m, e, tol), Relation::AtLeast.holds(-m, -e, tol));
    }

    #[test]
    fn presets_round_trip_through_description(k in 0u32..8, c in 0.1f64..3.0, w in 0.1f64..2.0) {
        for p in [
            DataProfile::Power { coeff: c, exponent: k as f64 },
            DataProfile::Sine { freq: c },
            DataProfile::Cosine { freq: c },
            DataProfile::Bump { center: c, width: w },
            DataProfile::Constant(c),
        ] {
            prop_assert_eq!(DataProfile::parse_preset(&p.describe()).unwrap(), p);
        }
    }

    #[test]
    fn volterra_march_is_linear_in_the_forcing(a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let g = TimeGrid::new(1.0, 32).unwrap();
        let system = |f: Vec<f64>| {
            VolterraSystem::new(g, vec![f])
                .unwrap()
                .with_kernel(0, 0, |s| s.cos(), fracairy_core::convolution::KernelShape::Power { coeff: 1.0, exponent: 0.0 })
                .unwrap()
        };
        let f1: Vec<f64> = g.nodes().iter().map(|t| t.sin()).collect();
        let f2: Vec<f64> = g.nodes().iter().map(|t| t * t).collect();
        let mix: Vec<f64> = f1.iter().zip(&f2).map(|(x, y)| a * x + b * y).collect();
        let u1 = solve_march(&system(f1)).unwrap().values.remove(0);
        let u2 = solve_march(&system(f2)).unwrap().values.remove(0);
        let um = solve_march(&system(mix)).unwrap().values.remove(0);
        for k in 0..um.len() {
            prop_assert!((um[k] - a * u1[k] - b * u2[k]).abs() <= 1e-12 * (1.0 + um[k].abs()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn tabulated_profile_matches_exact_kernel(alpha in 0.2f64..0.9, y in -6.0f64..6.0, dx in 0u32..3) {
        prop_assume!(y.abs() > 1e-3);
        let a = FractionalOrder::new(alpha).unwrap();
        let spec = KernelSpec::standard(Branch::G, a, dx);
        let table = KernelProfile::new(spec).unwrap().value(y);
        let exact = Kernel::new(spec).unwrap().profile(y).unwrap();
        prop_assert!((table - exact).abs() <= 1e-10, "{table} vs {exact}");
    }

    #[test]
    fn half_line_solution_superposes_boundary_data(a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let basis = half_line_basis();
        let um = half_line_solve(a, b);
        for ((u, p), q) in um.iter().zip(&basis.0).zip(&basis.1) {
            prop_assert!((u - a * p - b * q).abs() <= 1e-10 * (1.0 + u.abs()));
        }
    }

    #[test]
    fn zero_order_kernel_scales_self_similarly(alpha in 0.2f64..0.9, x in -3.0f64..-0.1, t in 0.1f64..2.0, s in 0.5f64..2.0) {
        // G(x, t) = t^{μ−1} g(x t^{−α/3}), so G(s^{α/3} x, s t) = s^{μ−1} G(x, t).
        let a = FractionalOrder::new(alpha).unwrap();
        let k = Kernel::new(KernelSpec::standard(Branch::G, a, 0)).unwrap();
        let lhs = k.eval(s.powf(a.delta()) * x, s * t).unwrap().value;
        let rhs = s.powf(a.two_delta() - 1.0) * k.eval(x, t).unwrap().value;
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
    }
}
