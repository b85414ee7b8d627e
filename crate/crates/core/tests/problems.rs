use fracairy_core::data::DataProfile;
use fracairy_core::fractional::TimeGrid;
use fracairy_core::potentials::KernelBank;
use fracairy_core::problems::{solve, ProblemId, ProblemSetup, SpaceGrid};
use fracairy_core::verification::{check_manufactured_density, grid_residual};
use fracairy_core::{Error, FractionalOrder};

fn half() -> FractionalOrder {
    FractionalOrder::new(0.5).unwrap()
}

#[test]
fn order_outside_unit_interval_names_the_invariant() {
    for a in [0.0, 1.0, 1.5, -0.2, f64::NAN] {
        let e = FractionalOrder::new(a).unwrap_err();
        assert!(matches!(e, Error::OrderOutOfRange(_)));
        assert!(e.to_string().contains("0<alpha<1"), "{e}");
    }
}

#[test]
fn data_that_do_not_vanish_at_zero_are_rejected() {
    let setup = ProblemSetup::with_defaults(ProblemId::One, half())
        .with_boundary("phi1", DataProfile::parse_preset("cos").unwrap())
        .unwrap();
    assert!(matches!(solve(&setup, &mut KernelBank::new()), Err(Error::IncompatibleData(_))));
}

#[test]
fn unknown_boundary_name_is_rejected() {
    let r = ProblemSetup::with_defaults(ProblemId::Three, half()).with_boundary("phi1", DataProfile::Zero);
    assert!(matches!(r, Err(Error::InvalidParameter(_))));
}

#[test]
fn space_grid_must_fit_the_problem() {
    let setup = ProblemSetup::with_defaults(ProblemId::Two, half()).with_space(SpaceGrid::new(-1.0, 1.0, 8).unwrap());
    assert!(setup.validate().is_err());
}

#[test]
fn half_line_corner_row_is_exactly_zero() {
    let setup = ProblemSetup::with_defaults(ProblemId::Two, half())
        .with_time(TimeGrid::new(1.0, 64).unwrap())
        .with_boundary("psi1", DataProfile::parse_preset("poly:2").unwrap())
        .unwrap();
    let field = solve(&setup, &mut KernelBank::new()).unwrap();
    assert!(field.row(0).iter().all(|&u| u == 0.0));
    assert!(field.row(64).iter().any(|&u| u != 0.0));
    assert!((field.value(64, 0) - 1.0).abs() < 1e-3, "u(0,1) = {}", field.value(64, 0));
}

#[test]
fn manufactured_densities_are_recovered() {
    let recs = check_manufactured_density(half(), 64, 1e-3).unwrap();
    assert_eq!(recs.len(), 3);
    assert!(recs.iter().all(|r| r.pass), "{recs:?}");
}

#[test]
fn residual_needs_five_points() {
    let g = TimeGrid::new(1.0, 4).unwrap();
    let x = [0.0, 0.5, 1.0];
    let u = vec![0.0; 15];
    assert!(matches!(grid_residual(&x, g, &u, 0.5, |_, _| 0.0), Err(Error::GridTooCoarse(_))));
}
